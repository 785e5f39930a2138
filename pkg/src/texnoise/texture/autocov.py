"""Autocovariance-margin features.

The mean-subtracted covariance is evaluated for horizontal (column) and
vertical (row) shifts up to half the ROI side, normalized by the zero-shift
value, and each margin is summarized by an exponential fit A*exp(-B*x) on
its positive samples and a parabola fit 1 + C*x + D*x^2 anchored at 1.
"""

from __future__ import annotations

import numpy as np

from ..raster import Raster
from .common import FeatureVector

NAMES = ("acf_exp_rate_h", "acf_exp_rate_v", "acf_para_c_h", "acf_para_c_v",
         "acf_para_d_h", "acf_para_d_v", "acf_exp_amp_h", "acf_exp_amp_v")

MIN_EXP_POINTS = 3


def autocovariance_margins(data: np.ndarray, max_shift: int) -> tuple[np.ndarray, np.ndarray]:
    """Normalized covariance along pure column shifts (horizontal margin)
    and pure row shifts (vertical margin), each of length max_shift + 1.
    Raises on a zero-variance input."""
    z = data - data.mean()
    m, n = z.shape
    var0 = float(np.mean(z * z))
    if var0 == 0.0:
        raise ZeroDivisionError("zero-variance region has no covariance structure")
    horiz = np.empty(max_shift + 1)
    vert = np.empty(max_shift + 1)
    for s in range(max_shift + 1):
        horiz[s] = np.sum(z[:, :n - s] * z[:, s:]) / (m * (n - s))
        vert[s] = np.sum(z[:m - s, :] * z[s:, :]) / ((m - s) * n)
    return horiz / var0, vert / var0


def _fit_exponential(margin: np.ndarray) -> tuple[float, float, bool]:
    """Log-linear least squares of A*exp(-B*x); non-positive samples are
    excluded and fewer than MIN_EXP_POINTS positives degenerates to zeros."""
    x = np.arange(margin.size, dtype=np.float64)
    keep = margin > 0.0
    if keep.sum() < MIN_EXP_POINTS:
        return 0.0, 0.0, True
    xs = x[keep]
    ys = np.log(margin[keep])
    slope, intercept = np.polyfit(xs, ys, 1)
    return float(np.exp(intercept)), float(-slope), False


def _fit_parabola(margin: np.ndarray) -> tuple[float, float]:
    """Least squares of margin - 1 = C*x + D*x^2 (amplitude pinned by the
    unit zero-shift sample)."""
    x = np.arange(margin.size, dtype=np.float64)
    design = np.column_stack([x, x * x])
    coef, *_ = np.linalg.lstsq(design, margin - 1.0, rcond=None)
    return float(coef[0]), float(coef[1])


def acf_features(roi: Raster) -> FeatureVector:
    """8 features: exponential decay rates, parabola coefficients and
    exponential amplitudes for the horizontal and vertical margins."""
    if roi.height < 8 or roi.width < 8:
        raise ValueError(f"ROI must be at least 8x8, got {roi.height}x{roi.width}")
    max_shift = min(roi.height, roi.width) // 2
    try:
        horiz, vert = autocovariance_margins(roi.data, max_shift)
    except ZeroDivisionError:
        return FeatureVector("ACF", NAMES, np.zeros(8), degenerate=True)
    amp_h, rate_h, deg_h = _fit_exponential(horiz)
    amp_v, rate_v, deg_v = _fit_exponential(vert)
    c_h, d_h = _fit_parabola(horiz)
    c_v, d_v = _fit_parabola(vert)
    values = np.array([rate_h, rate_v, c_h, c_v, d_h, d_v, amp_h, amp_v])
    return FeatureVector("ACF", NAMES, values, degenerate=deg_h or deg_v)
