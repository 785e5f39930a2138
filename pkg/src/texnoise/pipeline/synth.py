"""Synthetic corpus generator: body-like disks with a textured tumour patch
over an open-air background, plus injected acquisition noise.

Stands in for clinical data that cannot ship with the package; noise
parameter ranges default to the envelopes measured on real scans
(mean 7.2..25.1, variance 7.5..86.8 in detector numbers).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..fields import fbm_field, gmrf_field
from ..noise import NoiseFamily, fit_family
from ..raster import Raster, RoiKind, RoiSpec, write_pgm
from .manifest import CaseManifestEntry, write_manifest

# keeps near-zero-mean Gaussian noise clear of the file format's zero floor;
# non-negative-support families need no offset
_AIR_PEDESTAL = {NoiseFamily.GAUSSIAN: 12.0,
                 NoiseFamily.RAYLEIGH: 0.0,
                 NoiseFamily.ERLANG: 0.0}

TEXTURE_KINDS = ("mrf", "fbm", "blend")


@dataclass(frozen=True)
class SyntheticSpec:
    n_cases: int = 56
    texture_kind: str = "blend"
    noise_family: NoiseFamily = NoiseFamily.GAUSSIAN
    mu_range: tuple[float, float] = (7.2, 25.1)
    sigma2_range: tuple[float, float] = (7.5, 86.8)
    seed: int = 0
    image_size: int = 128
    roi_side: int = 32

    def __post_init__(self):
        if self.texture_kind not in TEXTURE_KINDS:
            raise ValueError(f"texture_kind must be one of {TEXTURE_KINDS}")
        if self.n_cases < 1:
            raise ValueError("need at least one case")
        if self.image_size < 3 * self.roi_side:
            raise ValueError("image too small to hold separated tumour and background ROIs")


def _texture_patch(kind: str, side: int, case_index: int,
                   rng: np.random.Generator) -> np.ndarray:
    """Unit-std texture for the tumour; 'blend' alternates the generators."""
    if kind == "blend":
        kind = "mrf" if case_index % 2 == 0 else "fbm"
    if kind == "mrf":
        alphas = np.zeros(6)
        alphas[0] = rng.uniform(0.08, 0.2)
        alphas[1] = rng.uniform(0.08, 0.2)
        field = gmrf_field((side, side), alphas, 1.0, rng)
        return field / field.std()
    return fbm_field(side, rng.uniform(0.35, 0.65), rng)


def generate_synthetic(spec: SyntheticSpec, out_dir: str | Path) -> Path:
    """Write one PGM + mask per case and a manifest; returns the manifest
    path. Byte-identical output for a fixed spec."""
    out_dir = Path(out_dir)
    (out_dir / "images").mkdir(parents=True, exist_ok=True)
    (out_dir / "masks").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(spec.seed)
    size = spec.image_size
    side = spec.roi_side
    # the body sits away from the top-left corner so the open-air background
    # region never touches it, while staying inside the reconstruction circle
    body_center = 0.6 * size
    radius = 0.31 * size
    max_jitter = max(1, round(0.04 * size))
    coords = np.arange(size) + 0.5
    xx, yy = np.meshgrid(coords - body_center, coords - body_center)
    body_mask = xx**2 + yy**2 <= radius**2
    pedestal = _AIR_PEDESTAL[spec.noise_family]
    entries: list[CaseManifestEntry] = []
    for i in range(spec.n_cases):
        case_id = f"case{i:03d}"
        body_value = rng.uniform(100.0, 140.0)
        img = np.full((size, size), pedestal)
        img[body_mask] = body_value
        # tumour patch: textured square jittered around the body center
        jitter = rng.integers(-max_jitter, max_jitter + 1, size=2)
        ty = int(body_center - side / 2) + int(jitter[0])
        tx = int(body_center - side / 2) + int(jitter[1])
        amplitude = rng.uniform(12.0, 25.0)
        contrast = rng.uniform(20.0, 40.0)
        patch = _texture_patch(spec.texture_kind, side, i, rng)
        img[ty:ty + side, tx:tx + side] = body_value + contrast + amplitude * patch
        # acquisition noise over the full field of view; zero variance means
        # a noise-free case
        mu = rng.uniform(*spec.mu_range)
        sigma2 = rng.uniform(*spec.sigma2_range)
        if sigma2 > 0.0:
            model = fit_family(spec.noise_family, mu, sigma2)
            img = img + model.sample_array((size, size), rng)
        image_path = out_dir / "images" / f"{case_id}.pgm"
        mask_path = out_dir / "masks" / f"{case_id}_mask.pgm"
        write_pgm(Raster(np.maximum(img, 0.0), depth=16), image_path)
        write_pgm(Raster(body_mask * 255.0, depth=8), mask_path)
        entries.append(CaseManifestEntry(
            case_id=case_id,
            image_path=image_path,
            mask_path=mask_path,
            tumour_roi=RoiSpec(tx, ty, side, RoiKind.TUMOUR),
            background_roi=RoiSpec(2, 2, side, RoiKind.BACKGROUND),
        ))
    manifest_path = out_dir / "manifest.csv"
    write_manifest(entries, manifest_path)
    return manifest_path
