"""Flat key = value run configuration with documented defaults and lossless
round-tripping (floats serialize via repr)."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from ..errors import ManifestError


@dataclass
class RunConfig:
    """Everything a full assessment run needs; every field has a default."""

    manifest: str = ""            # dataset manifest CSV (required for assess)
    output_dir: str = "out"       # where reports and artifacts land
    seed: int = 0                 # run seed (synthesis/reproducibility)
    workers: int = 1              # case-level worker processes
    recon_mode: str = "fbp"       # "fbp" or "none" (skip reconstruction)
    recon_angles: int = 360
    recon_filter: str = "ramp"    # ramp | shepp-logan | hamming
    detector_spacing: float = 1.0
    filter_window: int = 5
    clamp_ratio: bool = True
    noise_bins: int = 64
    cm_levels: int = 64
    rlm_levels: int = 16
    wavelet: str = "db4"          # haar | db4
    fd_window: int = 9

    def __post_init__(self):
        if self.recon_mode not in ("fbp", "none"):
            raise ManifestError(f"recon_mode must be 'fbp' or 'none', got {self.recon_mode!r}")
        if self.workers < 1:
            raise ManifestError(f"workers must be >= 1, got {self.workers}")


def _parse_value(kind: type, raw: str):
    if kind is bool:
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    return kind(raw)


def parse_config(text: str) -> RunConfig:
    """Parse ``key = value`` lines; '#' starts a comment; unknown keys fail."""
    typemap = {f.name: f.type for f in fields(RunConfig)}
    # dataclass fields carry string annotations under future-style modules
    realtypes = {"str": str, "int": int, "float": float, "bool": bool}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ManifestError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in body.split("=", 1))
        if key not in typemap:
            raise ManifestError(f"config line {lineno}: unknown key {key!r}")
        kind = realtypes[typemap[key]] if isinstance(typemap[key], str) else typemap[key]
        try:
            values[key] = _parse_value(kind, raw)
        except ValueError as exc:
            raise ManifestError(f"config line {lineno}: bad value for {key}: {exc}") from exc
    return RunConfig(**values)


def format_config(cfg: RunConfig) -> str:
    lines = []
    for f in fields(RunConfig):
        value = getattr(cfg, f.name)
        if isinstance(value, bool):
            rendered = "true" if value else "false"
        elif isinstance(value, float):
            rendered = repr(value)
        else:
            rendered = str(value)
        lines.append(f"{f.name} = {rendered}")
    return "\n".join(lines) + "\n"


def load_config(path: str | Path) -> RunConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def save_config(cfg: RunConfig, path: str | Path) -> None:
    Path(path).write_text(format_config(cfg), encoding="utf-8")
