"""Render figures from a finished assessment directory, next to the CSVs."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from ..errors import ManifestError

FAMILY_COLORS = {"gaussian": "tab:blue", "rayleigh": "tab:orange", "erlang": "tab:green"}


def _read_rows(path: Path) -> list[dict]:
    if not path.exists():
        raise ManifestError(f"missing report input {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _separability_figure(rows: list[dict], path: Path) -> None:
    methods = [r["method"] for r in rows]
    j_oc = np.array([float(r["J_oc"]) for r in rows])
    j_on = np.array([float(r["J_on"]) for r in rows])
    x = np.arange(len(methods))
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.bar(x - 0.2, j_oc, width=0.4, label="original vs clean")
    ax.bar(x + 0.2, j_on, width=0.4, label="original vs noisy")
    ax.set_xticks(x, methods)
    ax.set_ylabel("Fisher separability")
    if j_on.max() > 0 and j_on.max() / max(j_on[j_on > 0].min(), 1e-30) > 50:
        ax.set_yscale("log")
    ax.set_title("Susceptibility of texture methods to noise")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _noise_figure(rows: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for family, color in FAMILY_COLORS.items():
        mu = [float(r["mu"]) for r in rows if r["family"] == family]
        s2 = [float(r["sigma2"]) for r in rows if r["family"] == family]
        if mu:
            ax.scatter(mu, s2, s=18, color=color, label=f"{family} ({len(mu)})")
    ax.set_xlabel("background mean")
    ax.set_ylabel("background variance")
    ax.set_title("Identified noise per case")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_report(output_dir: str | Path) -> list[Path]:
    """Produce separability and noise figures from an assess output dir."""
    out = Path(output_dir)
    sep_png = out / "separability.png"
    noise_png = out / "noise_params.png"
    _separability_figure(_read_rows(out / "separability.csv"), sep_png)
    _noise_figure(_read_rows(out / "noise_records.csv"), noise_png)
    return [sep_png, noise_png]
