"""End-to-end assessment: per case, identify noise, build clean/distorted
versions, reconstruct all three, extract every texture method from the
tumour ROI, then score original-vs-clean and original-vs-noisy separability
per method.

Cases run independently (optionally in a process pool); aggregation always
happens in manifest order, so outputs are byte-identical for any worker
count. Per-case failures are recorded and skipped; the run fails only when
no case succeeds.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

import numpy as np

from ..errors import DegenerateNoiseError, ManifestError, TexnoiseError
from ..filtering import FilterConfig, adaptive_filter, distort, residual
from ..noise import FAMILY_ORDER, identify
from ..raster import extract_roi, moments, read_pgm
from ..recon import ScanGeometry, roundtrip
from ..separability import FisherResult, SeparabilityReport, fisher_j, rank_methods, scatter
from ..texture import METHODS, all_features, normalize_features
from .config import RunConfig, format_config
from .manifest import CaseManifestEntry, read_manifest

VERSIONS = ("original", "clean", "distorted")

THREAD_ENV = "TEXNOISE_THREADS"


@dataclass
class CaseResult:
    case_id: str
    # (family, mu, sigma2, d_gaussian, d_rayleigh, d_erlang); distances may
    # be None for families that could not be fitted
    noise_record: tuple | None = None
    # (version, method) -> (names, values)
    features: dict | None = None
    error: str | None = None


def process_case(entry: CaseManifestEntry, cfg: RunConfig) -> CaseResult:
    """Run the whole per-case chain; any domain failure is captured in the
    result rather than raised."""
    try:
        img = read_pgm(entry.image_path)
        if entry.mask_path is not None:
            mask = read_pgm(entry.mask_path)
            if mask.data.shape != img.data.shape:
                raise ManifestError(
                    f"mask shape {mask.data.shape} does not match image {img.data.shape}"
                )
            roi = entry.background_roi
            patch = mask.data[roi.origin_y:roi.origin_y + roi.side,
                              roi.origin_x:roi.origin_x + roi.side]
            if patch.shape != (roi.side, roi.side) or np.any(patch > 0):
                raise ManifestError("background ROI overlaps the body mask")
        background = extract_roi(img, entry.background_roi)
        try:
            est = identify(background, bins=cfg.noise_bins, roi=entry.background_roi)
            noise_variance = est.sigma2
            record = (est.best.family.value, est.mu, est.sigma2,
                      *[est.distances.get(fam) for fam in FAMILY_ORDER])
        except DegenerateNoiseError:
            # noise-free background: the filter degenerates to the identity
            noise_variance = 0.0
            record = ("none", moments(background).mean, 0.0, None, None, None)
        fcfg = FilterConfig(window=cfg.filter_window, noise_variance=noise_variance,
                            clamp_ratio=cfg.clamp_ratio)
        clean = adaptive_filter(img, fcfg)
        eta = residual(img, clean)
        versions = {
            "original": img,
            "clean": clean,
            "distorted": distort(img, eta),
        }
        if cfg.recon_mode == "fbp":
            geom = ScanGeometry(n_angles=cfg.recon_angles,
                                detector_spacing=cfg.detector_spacing)
            versions = {name: roundtrip(image, geom, cfg.recon_filter)
                        for name, image in versions.items()}
        feats = {}
        for name, image in versions.items():
            roi = extract_roi(image, entry.tumour_roi)
            for method, fv in all_features(
                    roi, cm_levels=cfg.cm_levels, rlm_levels=cfg.rlm_levels,
                    wavelet=cfg.wavelet, fd_window=cfg.fd_window).items():
                feats[(name, method)] = (fv.names, fv.values)
        return CaseResult(case_id=entry.case_id, noise_record=record, features=feats)
    except (TexnoiseError, OSError, ValueError) as exc:
        return CaseResult(case_id=entry.case_id, error=f"{type(exc).__name__}: {exc}")


def _worker_count(cfg: RunConfig) -> int:
    cap = os.environ.get(THREAD_ENV)
    workers = cfg.workers
    if cap:
        workers = min(workers, max(1, int(cap)))
    return workers


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _method_j(results: list[CaseResult], version: str, method: str) -> FisherResult:
    originals = np.array([r.features[("original", method)][1] for r in results])
    perturbed = np.array([r.features[(version, method)][1] for r in results])
    pooled = normalize_features(np.vstack([originals, perturbed]))
    n = originals.shape[0]
    return fisher_j(scatter(pooled[:n], pooled[n:]))


def run_assessment(cfg: RunConfig) -> SeparabilityReport:
    """Execute the full pipeline described in the module docstring and write
    features/noise/separability/ranking CSVs into cfg.output_dir."""
    if not cfg.manifest:
        raise ManifestError("assessment needs a manifest path")
    entries = read_manifest(cfg.manifest)
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = _worker_count(cfg)
    job = partial(process_case, cfg=cfg)
    if workers == 1:
        results = [job(entry) for entry in entries]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, entries))
    good = [r for r in results if r.error is None]
    failed = [r for r in results if r.error is not None]
    if not good:
        raise ManifestError(
            f"all {len(results)} cases failed; first error: {failed[0].error}"
        )

    feature_rows = []
    for r in good:
        for version in VERSIONS:
            for method in METHODS:
                names, values = r.features[(version, method)]
                for name, value in zip(names, values):
                    feature_rows.append([r.case_id, version, method, name, _fmt(value)])
    _write_csv(out_dir / "features.csv",
               ["case_id", "version", "method", "feature_name", "value"],
               feature_rows)

    noise_rows = []
    for r in good:
        family, mu, sigma2, *distances = r.noise_record
        noise_rows.append([r.case_id, family, _fmt(mu), _fmt(sigma2),
                           *["" if d is None else _fmt(d) for d in distances]])
    _write_csv(out_dir / "noise_records.csv",
               ["case_id", "family", "mu", "sigma2",
                "d_gauss", "d_rayleigh", "d_erlang"],
               noise_rows)

    j_clean = {m: _method_j(good, "clean", m) for m in METHODS}
    j_noisy = {m: _method_j(good, "distorted", m) for m in METHODS}
    report = rank_methods(j_clean, j_noisy)

    _write_csv(out_dir / "separability.csv",
               ["method", "J_oc", "J_on"],
               [[m, _fmt(report.j_clean[m].j), _fmt(report.j_noisy[m].j)]
                for m in METHODS])
    _write_csv(out_dir / "rankings.csv",
               ["rank", "method_clean", "method_noisy"],
               [[i + 1, mc, mn] for i, (mc, mn) in
                enumerate(zip(report.ranking_clean, report.ranking_noisy))])
    _write_csv(out_dir / "failures.csv",
               ["case_id", "error"],
               [[r.case_id, r.error] for r in failed])
    (out_dir / "run_config.txt").write_text(format_config(cfg), encoding="utf-8")
    return report
