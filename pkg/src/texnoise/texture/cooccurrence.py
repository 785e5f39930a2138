"""Gray-level co-occurrence features over four directions.

Matrices are single-direction (not symmetrized), built at unit displacement
by default, and normalized to joint probabilities. Per direction: energy,
entropy, dissimilarity and correlation. Feature sums run through math.fsum
so results are independent of summation order.
"""

from __future__ import annotations

import math

import numpy as np

from ..raster import Raster
from .common import ANGLE_OFFSETS, TEXTURE_ANGLES, FeatureVector, GrayQuant

FEATURE_ORDER = ("energy", "entropy", "dissimilarity", "correlation")

NAMES = tuple(f"cm_a{angle}_{feat}" for angle in TEXTURE_ANGLES for feat in FEATURE_ORDER)


def cooccurrence_matrix(quantized: np.ndarray, levels: int, angle: int,
                        delta: int = 1) -> np.ndarray:
    """Count pairs (gray at p, gray at p + delta*offset(angle)); returns the
    raw (levels, levels) count matrix."""
    dr, dc = ANGLE_OFFSETS[angle]
    dr *= delta
    dc *= delta
    m, n = quantized.shape
    r0, r1 = max(0, -dr), min(m, m - dr)
    c0, c1 = max(0, -dc), min(n, n - dc)
    if r0 >= r1 or c0 >= c1:
        return np.zeros((levels, levels))
    a = quantized[r0:r1, c0:c1]
    b = quantized[r0 + dr:r1 + dr, c0 + dc:c1 + dc]
    counts = np.bincount((a * levels + b).ravel(), minlength=levels * levels)
    return counts.reshape(levels, levels).astype(np.float64)


def _matrix_features(p: np.ndarray) -> tuple[list[float], bool]:
    xs, ys = np.nonzero(p)
    pv = p[xs, ys]
    energy = math.fsum(v * v for v in pv)
    entropy = -math.fsum(v * math.log2(v) for v in pv)
    dissim = math.fsum(abs(int(x) - int(y)) * v for x, y, v in zip(xs, ys, pv))
    mu_x = math.fsum(int(x) * v for x, v in zip(xs, pv))
    mu_y = math.fsum(int(y) * v for y, v in zip(ys, pv))
    var_x = math.fsum((int(x) - mu_x) ** 2 * v for x, v in zip(xs, pv))
    var_y = math.fsum((int(y) - mu_y) ** 2 * v for y, v in zip(ys, pv))
    degenerate = var_x <= 0.0 or var_y <= 0.0
    if degenerate:
        corr = 0.0
    else:
        cov = math.fsum((int(x) - mu_x) * (int(y) - mu_y) * v
                        for x, y, v in zip(xs, ys, pv))
        corr = cov / math.sqrt(var_x * var_y)
    return [energy, entropy, dissim, corr], degenerate


def cm_features(roi: Raster, quant: GrayQuant | None = None,
                delta: int = 1) -> FeatureVector:
    """16 features: (energy, entropy, dissimilarity, correlation) per
    direction, direction-major over 0/45/90/135 degrees."""
    quant = quant or GrayQuant(64)
    q = quant.quantize(roi.data)
    if min(q.shape) < 2:
        raise ValueError("ROI too small for pair counting")
    values: list[float] = []
    degenerate = False
    for angle in TEXTURE_ANGLES:
        counts = cooccurrence_matrix(q, quant.levels, angle, delta)
        total = counts.sum()
        if total == 0:
            values.extend([0.0, 0.0, 0.0, 0.0])
            degenerate = True
            continue
        feats, deg = _matrix_features(counts / total)
        values.extend(feats)
        degenerate = degenerate or deg
    return FeatureVector("CM", NAMES, np.array(values), degenerate=degenerate)
