"""Gabor filter-bank energies.

A dyadic bank of three center frequencies (sqrt(2)/16, sqrt(2)/8, sqrt(2)/4
cycles/pixel) and four orientations filters the ROI in the frequency domain
with the analytic (single-lobe) Gaussian transfer function; each feature is
the mean squared magnitude response of one channel. The Gaussian width is
fixed per frequency for a half-octave bandwidth, and the DC coefficient is
zeroed so energies ignore the ROI mean.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from ..raster import Raster
from .common import TEXTURE_ANGLES, FeatureVector

GABOR_SIZE = 32

GABOR_FREQS = (math.sqrt(2.0) / 16.0, math.sqrt(2.0) / 8.0, math.sqrt(2.0) / 4.0)

NAMES = tuple(f"gf_f{i + 1}_a{angle}" for i in range(len(GABOR_FREQS))
              for angle in TEXTURE_ANGLES)

_HALF_OCTAVE = math.sqrt(2.0)


def gabor_sigma(f0: float) -> float:
    """Spatial Gaussian width giving a half-octave half-response bandwidth
    around center frequency ``f0``."""
    return (math.sqrt(2.0 * math.log(2.0)) * (_HALF_OCTAVE + 1.0)
            / (2.0 * math.pi * f0 * (_HALF_OCTAVE - 1.0)))


def _transfer(shape: tuple[int, int], f0: float, theta: float) -> np.ndarray:
    h, w = shape
    u = np.fft.fftfreq(w)[None, :]  # cycles/pixel along columns
    v = np.fft.fftfreq(h)[:, None]  # cycles/pixel along rows
    up = u * math.cos(theta) + v * math.sin(theta)
    vp = -u * math.sin(theta) + v * math.cos(theta)
    s2 = gabor_sigma(f0) ** 2
    transfer = np.exp(-2.0 * math.pi**2 * s2 * ((up - f0) ** 2 + vp**2))
    transfer[0, 0] = 0.0
    return transfer


def gabor_features(roi: Raster) -> FeatureVector:
    """12 mean-squared channel responses, frequency-major (low to high) over
    orientations 0/45/90/135 degrees. ROIs that are not 32x32 are resampled
    bilinearly first."""
    data = roi.data
    if data.shape != (GABOR_SIZE, GABOR_SIZE):
        zoom = (GABOR_SIZE / data.shape[0], GABOR_SIZE / data.shape[1])
        data = ndimage.zoom(data, zoom, order=1, mode="mirror")
    spectrum = np.fft.fft2(data)
    values = []
    for f0 in GABOR_FREQS:
        for angle in TEXTURE_ANGLES:
            transfer = _transfer(data.shape, f0, math.radians(angle))
            response = np.fft.ifft2(spectrum * transfer)
            values.append(float(np.mean(np.abs(response) ** 2)))
    return FeatureVector("GF", NAMES, np.array(values))
