"""Gray-level run-length features over four directions.

A run is a maximal co-linear sequence of equal quantized gray levels. Per
direction: short-run emphasis, long-run emphasis, gray-level non-uniformity
and run-length non-uniformity, each normalized by the total run count.
"""

from __future__ import annotations

import math

import numpy as np

from ..raster import Raster
from .common import TEXTURE_ANGLES, FeatureVector, GrayQuant

FEATURE_ORDER = ("sre", "lre", "gln", "rln")

NAMES = tuple(f"rlm_a{angle}_{feat}" for angle in TEXTURE_ANGLES for feat in FEATURE_ORDER)


def _lines(q: np.ndarray, angle: int) -> list[np.ndarray]:
    """Pixel sequences co-linear along the direction of ``angle``."""
    m, n = q.shape
    if angle == 0:
        return [q[i, :] for i in range(m)]
    if angle == 90:
        return [q[:, j] for j in range(n)]
    if angle == 45:
        flipped = q[:, ::-1]
        return [flipped.diagonal(k) for k in range(-(m - 1), n)]
    if angle == 135:
        return [q.diagonal(k) for k in range(-(m - 1), n)]
    raise ValueError(f"unsupported direction {angle}")


def run_length_matrix(quantized: np.ndarray, levels: int, angle: int) -> np.ndarray:
    """Count matrix indexed by (gray level, run length - 1); the run-length
    axis spans up to the longest possible line."""
    max_len = max(quantized.shape)
    counts = np.zeros((levels, max_len))
    for line in _lines(quantized, angle):
        k = line.size
        if k == 0:
            continue
        # maximal runs: split where consecutive values differ
        breaks = np.flatnonzero(line[1:] != line[:-1])
        starts = np.concatenate(([0], breaks + 1))
        ends = np.concatenate((breaks + 1, [k]))
        np.add.at(counts, (line[starts], ends - starts - 1), 1.0)
    return counts


def _matrix_features(counts: np.ndarray) -> list[float]:
    total = counts.sum()
    glevels, lengths = np.nonzero(counts)
    vals = counts[glevels, lengths]
    runlens = lengths + 1
    sre = math.fsum(v / (y * y) for v, y in zip(vals, runlens)) / total
    lre = math.fsum(v * y * y for v, y in zip(vals, runlens)) / total
    by_gray = counts.sum(axis=1)
    by_len = counts.sum(axis=0)
    gln = math.fsum(v * v for v in by_gray[by_gray > 0]) / total
    rln = math.fsum(v * v for v in by_len[by_len > 0]) / total
    return [sre, lre, gln, rln]


def rlm_features(roi: Raster, quant: GrayQuant | None = None) -> FeatureVector:
    """16 features: (sre, lre, gln, rln) per direction, direction-major over
    0/45/90/135 degrees."""
    quant = quant or GrayQuant(16)
    q = quant.quantize(roi.data)
    values: list[float] = []
    for angle in TEXTURE_ANGLES:
        counts = run_length_matrix(q, quant.levels, angle)
        values.extend(_matrix_features(counts))
    return FeatureVector("RLM", NAMES, np.array(values))
