"""Adaptive local noise reduction and distorted-image synthesis.

The filter shrinks each pixel toward its local window mean in proportion to
the ratio of global noise variance to local variance, so uniform regions are
averaged while strong edges pass nearly untouched. The removed component is
the noise residual; adding it back onto the original doubles the noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DimensionMismatchError
from .raster import Raster


@dataclass(frozen=True)
class FilterConfig:
    """window: odd side of the local neighbourhood; noise_variance: the
    globally estimated noise variance; clamp_ratio caps the shrink ratio at 1
    to keep the output inside each window's intensity hull."""

    window: int = 5
    noise_variance: float = 0.0
    clamp_ratio: bool = True

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError(f"window must be odd and >= 3, got {self.window}")
        if self.noise_variance < 0.0:
            raise ValueError(f"noise variance must be >= 0, got {self.noise_variance}")


def adaptive_filter(img: Raster, cfg: FilterConfig) -> Raster:
    """Per pixel: out = I - r * (I - local_mean), r = noise_var / local_var.

    Borders are mirror-reflected. Windows with zero local variance take
    r = 1 (returning the constant local value) whenever noise_var > 0."""
    if img.height < cfg.window or img.width < cfg.window:
        raise DimensionMismatchError(
            f"image {img.height}x{img.width} smaller than window {cfg.window}"
        )
    data = img.data
    local_mean = ndimage.uniform_filter(data, size=cfg.window, mode="mirror")
    local_sq = ndimage.uniform_filter(data * data, size=cfg.window, mode="mirror")
    local_var = np.maximum(local_sq - local_mean * local_mean, 0.0)
    if cfg.noise_variance == 0.0:
        return Raster(data, depth=img.depth)
    with np.errstate(divide="ignore"):
        ratio = np.where(local_var > 0.0, cfg.noise_variance / local_var, 1.0)
    if cfg.clamp_ratio:
        ratio = np.minimum(ratio, 1.0)
    return Raster(data - ratio * (data - local_mean), depth=img.depth)


def _check_dims(a: Raster, b: Raster) -> None:
    if a.data.shape != b.data.shape:
        raise DimensionMismatchError(
            f"shape mismatch: {a.data.shape} vs {b.data.shape}"
        )


def residual(original: Raster, clean: Raster) -> Raster:
    """Signed noise estimate: original minus clean, elementwise."""
    _check_dims(original, clean)
    return Raster(original.data - clean.data, depth=original.depth)


def distort(original: Raster, eta: Raster) -> Raster:
    """Add the extracted noise back onto the original (no range clamping)."""
    _check_dims(original, eta)
    return Raster(original.data + eta.data, depth=original.depth)
