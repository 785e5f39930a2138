"""Synthetic random-field generators used by the corpus builder and tests."""

from __future__ import annotations

import numpy as np

# symmetric-pair offsets (row, col) shared with the texture model estimator
PAIR_OFFSETS = ((1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (1, -1))


def gmrf_field(shape: tuple[int, int], alphas, sigma2: float,
               rng: np.random.Generator) -> np.ndarray:
    """Sample a stationary conditional-autoregression field on the torus.

    The conditional mean of each pixel is sum(alpha_l * pair_sum_l) over the
    six symmetric neighbour pairs; sampling shapes white noise with the
    field's spectral density, which must stay positive.
    """
    alphas = np.asarray(alphas, dtype=np.float64)
    if alphas.shape != (6,):
        raise ValueError("need exactly 6 interaction coefficients")
    h, w = shape
    fr = np.fft.fftfreq(h)[:, None]
    fc = np.fft.fftfreq(w)[None, :]
    lam = np.ones((h, w))
    for (dr, dc), a in zip(PAIR_OFFSETS, alphas):
        lam = lam - 2.0 * a * np.cos(2.0 * np.pi * (fr * dr + fc * dc))
    if lam.min() <= 0.0:
        raise ValueError("interaction coefficients give a non-positive spectrum")
    white = rng.standard_normal(shape)
    spec = np.fft.fft2(white) / np.sqrt(lam)
    return np.sqrt(sigma2) * np.fft.ifft2(spec).real


def fbm_field(size: int, hurst: float, rng: np.random.Generator) -> np.ndarray:
    """Spectral approximation of a fractional Brownian surface with the given
    Hurst exponent, normalized to unit standard deviation."""
    if not 0.0 < hurst < 1.0:
        raise ValueError(f"Hurst exponent must be in (0, 1), got {hurst}")
    fr = np.fft.fftfreq(size)[:, None]
    fc = np.fft.fftfreq(size)[None, :]
    f = np.hypot(fr, fc)
    f[0, 0] = 1.0
    amp = f ** (-(hurst + 1.0))
    amp[0, 0] = 0.0
    spec = np.fft.fft2(rng.standard_normal((size, size))) * amp
    surf = np.fft.ifft2(spec).real
    return surf / surf.std()
