"""Two-level wavelet-packet energies with orthonormal filters and periodic
boundary extension.

The ROI is split into 4 level-1 subbands, each split again into 4 children;
a feature is the maximum child energy (mean squared coefficient) under each
level-1 node, ordered (LL, LH, HL, HH).
"""

from __future__ import annotations

import numpy as np

from ..raster import Raster
from .common import FeatureVector

# orthonormal scaling filters: sum h = sqrt(2), sum h^2 = 1
WAVELETS = {
    "haar": np.array([0.7071067811865476, 0.7071067811865476]),
    "db4": np.array([
        0.230377813308855230, 0.714846570552541500, 0.630880767929590400,
        -0.027983769416983850, -0.187034811718881140, 0.030841381835986965,
        0.032883011666982945, -0.010597401784997278,
    ]),
}

NODE_ORDER = ("ll", "lh", "hl", "hh")

NAMES = tuple(f"wp_{node}_max_child" for node in NODE_ORDER)


def _filters(wavelet: str) -> tuple[np.ndarray, np.ndarray]:
    if wavelet not in WAVELETS:
        raise ValueError(f"unknown wavelet {wavelet!r}; choose from {sorted(WAVELETS)}")
    low = WAVELETS[wavelet]
    high = low[::-1].copy()
    high[1::2] *= -1.0
    return low, high


def _split_axis(x: np.ndarray, taps: np.ndarray, axis: int) -> np.ndarray:
    """Circular convolution with ``taps`` followed by downsampling by 2.

    Accumulates tap by tap (no BLAS) so results are bit-reproducible and a
    constant input cancels exactly under the high-pass filter."""
    x = np.moveaxis(x, axis, 0)
    n = x.shape[0]
    base = 2 * np.arange(n // 2)
    out = taps[0] * x[base]
    for m in range(1, taps.size):
        out = out + taps[m] * x[(base + m) % n]
    return np.moveaxis(out, 0, axis)


def dwt2(data: np.ndarray, wavelet: str = "db4") -> dict[str, np.ndarray]:
    """One separable analysis step; keys are row-filter then column-filter
    (l = low pass, h = high pass)."""
    if data.shape[0] % 2 or data.shape[1] % 2:
        raise ValueError(f"both sides must be even, got {data.shape}")
    low, high = _filters(wavelet)
    row_l = _split_axis(data, low, axis=0)
    row_h = _split_axis(data, high, axis=0)
    return {
        "ll": _split_axis(row_l, low, axis=1),
        "lh": _split_axis(row_l, high, axis=1),
        "hl": _split_axis(row_h, low, axis=1),
        "hh": _split_axis(row_h, high, axis=1),
    }


def wavelet_packet_energies(data: np.ndarray, wavelet: str = "db4") -> np.ndarray:
    """(4, 4) array of level-2 subband energies; row = level-1 node in
    NODE_ORDER, column = that node's children in NODE_ORDER."""
    level1 = dwt2(data, wavelet)
    out = np.empty((4, 4))
    for i, node in enumerate(NODE_ORDER):
        children = dwt2(level1[node], wavelet)
        out[i] = [np.mean(children[c] ** 2) for c in NODE_ORDER]
    return out


def wp_features(roi: Raster, wavelet: str = "db4") -> FeatureVector:
    """4 features: strongest child energy under each level-1 node."""
    if roi.height % 4 or roi.width % 4:
        raise ValueError(f"ROI sides must be divisible by 4, got {roi.data.shape}")
    energies = wavelet_packet_energies(roi.data, wavelet)
    return FeatureVector("WP", NAMES, energies.max(axis=1))
