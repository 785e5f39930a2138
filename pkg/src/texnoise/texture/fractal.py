"""Local fractal-dimension image from the scaling of mean absolute
intensity differences.

For every pixel, pairs inside a sliding window are binned by rounded pair
distance 1..4; the slope of log(mean |dI|) against log(distance) is the
local Hurst exponent and the local dimension is 3 - H, clamped to [2, 3].
First-order statistics of the resulting dimension image are the features.
"""

from __future__ import annotations

import numpy as np

from ..raster import Raster, moments
from .common import FeatureVector

NAMES = ("fd_mean", "fd_variance", "fd_skewness", "fd_kurtosis", "fd_lacunarity")

MAX_SCALE = 4


def _pair_offsets() -> list[tuple[int, int, int]]:
    """One representative (dr, dc, scale_bin) per unordered pair offset with
    rounded Euclidean distance in 1..MAX_SCALE."""
    out = []
    for dr in range(0, MAX_SCALE + 1):
        for dc in range(-MAX_SCALE, MAX_SCALE + 1):
            if dr == 0 and dc <= 0:
                continue
            rbin = int(round(np.hypot(dr, dc)))
            if 1 <= rbin <= MAX_SCALE:
                out.append((dr, dc, rbin))
    return out


_OFFSETS = _pair_offsets()


def fd_image(data: np.ndarray, window: int = 9) -> np.ndarray:
    """Per-pixel fractal dimension over a centered ``window`` (clipped at the
    image border). Pixels whose window is flat at every scale get 2.0."""
    if window < 2 * MAX_SCALE + 1 or window % 2 == 0:
        raise ValueError(f"window must be odd and >= {2 * MAX_SCALE + 1}, got {window}")
    m, n = data.shape
    h = window // 2
    rows = np.arange(m)
    cols = np.arange(n)
    sums = np.zeros((MAX_SCALE, m, n))
    cnts = np.zeros((MAX_SCALE, m, n))
    for dr, dc, rbin in _OFFSETS:
        adc = abs(dc)
        if dc >= 0:
            d = np.abs(data[dr:, dc:] - data[:m - dr, :n - dc])
        else:
            d = np.abs(data[dr:, :n - adc] - data[:m - dr, adc:])
        # d[i, j] covers a pair spanning rows [i, i+dr], cols [j, j+adc]:
        # it joins pixel p's window iff i in [p-h, p+h-dr], j in [p-h, p+h-adc]
        nr, nc = d.shape
        cum = np.zeros((nr + 1, nc + 1))
        cum[1:, 1:] = d.cumsum(axis=0).cumsum(axis=1)
        r0 = np.clip(rows - h, 0, nr)
        r1 = np.clip(rows + h - dr + 1, 0, nr)
        c0 = np.clip(cols - h, 0, nc)
        c1 = np.clip(cols + h - adc + 1, 0, nc)
        box = (cum[np.ix_(r1, c1)] - cum[np.ix_(r0, c1)]
               - cum[np.ix_(r1, c0)] + cum[np.ix_(r0, c0)])
        sums[rbin - 1] += box
        cnts[rbin - 1] += np.maximum(r1 - r0, 0)[:, None] * np.maximum(c1 - c0, 0)[None, :]
    mean_diff = np.divide(sums, cnts, out=np.zeros_like(sums), where=cnts > 0)
    # least-squares slope of log(mean |dI|) vs log(scale) over positive bins
    log_r = np.log(np.arange(1, MAX_SCALE + 1, dtype=np.float64))[:, None, None]
    valid = mean_diff > 0.0
    log_e = np.where(valid, np.log(np.where(valid, mean_diff, 1.0)), 0.0)
    lx = np.where(valid, log_r, 0.0)
    nv = valid.sum(axis=0)
    sx = lx.sum(axis=0)
    sy = log_e.sum(axis=0)
    sxx = (lx * lx).sum(axis=0)
    sxy = (lx * log_e).sum(axis=0)
    denom = nv * sxx - sx * sx
    fit_ok = (nv >= 2) & (denom > 0)
    hurst = np.divide(nv * sxy - sx * sy, denom,
                      out=np.ones(denom.shape), where=fit_ok)
    fd = np.where(fit_ok, 3.0 - hurst, 2.0)
    return np.clip(fd, 2.0, 3.0)


def fd_features(roi: Raster, window: int = 9) -> FeatureVector:
    """Mean, variance, skewness, kurtosis and lacunarity (variance/mean^2)
    of the local-dimension image."""
    if roi.height < 16 or roi.width < 16:
        raise ValueError(f"ROI must be at least 16x16, got {roi.height}x{roi.width}")
    fd = fd_image(roi.data, window=window)
    mom = moments(Raster(fd))
    lacunarity = mom.variance / (mom.mean * mom.mean)
    values = np.array([mom.mean, mom.variance, mom.skewness, mom.kurtosis, lacunarity])
    return FeatureVector("FD", NAMES, values, degenerate=mom.degenerate)
