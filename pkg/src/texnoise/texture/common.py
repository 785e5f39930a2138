"""Shared texture-extractor types: feature vectors, gray-level quantization,
and pooled z-score normalization."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

METHODS = ("GMRF", "FD", "CM", "RLM", "ACF", "GF", "WP")

FEATURE_COUNTS = {"GMRF": 7, "FD": 5, "CM": 16, "RLM": 16, "ACF": 8, "GF": 12, "WP": 4}

TEXTURE_ANGLES = (0, 45, 90, 135)

# displacement (row, col) per direction; rows grow downward
ANGLE_OFFSETS = {0: (0, 1), 45: (-1, 1), 90: (-1, 0), 135: (-1, -1)}


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Named features produced by one texture method on one ROI."""

    method: str
    names: tuple[str, ...]
    values: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        if self.method not in FEATURE_COUNTS:
            raise ValueError(f"unknown method {self.method!r}")
        vals = np.asarray(self.values, dtype=np.float64)
        expected = FEATURE_COUNTS[self.method]
        if vals.shape != (expected,) or len(self.names) != expected:
            raise ValueError(
                f"{self.method} expects {expected} features, got {vals.shape} "
                f"values / {len(self.names)} names"
            )
        if not np.isfinite(vals).all():
            raise ValueError(f"{self.method} produced non-finite feature values")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "names", tuple(self.names))


@dataclass(frozen=True)
class GrayQuant:
    """Linear min-max rescale to ``levels`` integer gray levels (floor rule;
    the maximum maps to levels - 1; a constant input maps to all zeros)."""

    levels: int = 64

    def __post_init__(self):
        if self.levels < 2:
            raise ValueError(f"need at least 2 gray levels, got {self.levels}")

    def quantize(self, data: np.ndarray) -> np.ndarray:
        lo = data.min()
        hi = data.max()
        if hi == lo:
            return np.zeros(data.shape, dtype=np.int64)
        q = np.floor((data - lo) / (hi - lo) * self.levels).astype(np.int64)
        return np.minimum(q, self.levels - 1)


def normalize_features(matrix: np.ndarray) -> np.ndarray:
    """Z-score each column over the pooled sample rows; columns with zero
    spread map to all zeros."""
    x = np.asarray(matrix, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise ValueError("need a 2-D matrix with at least 2 sample rows")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    out = np.zeros_like(x)
    ok = std > 0.0
    out[:, ok] = (x[:, ok] - mean[ok]) / std[ok]
    return out
