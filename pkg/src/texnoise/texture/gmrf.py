"""Gaussian Markov random field parameters via least squares.

Each interior pixel is regressed on six symmetric neighbour-pair sums
(orthogonal and diagonal reach up to 2); the features are the six
interaction coefficients plus the conditional innovation variance.
"""

from __future__ import annotations

import numpy as np

from ..raster import Raster
from .common import FeatureVector

NAMES = ("alpha1", "alpha2", "alpha3", "alpha4", "alpha5", "alpha6", "sigma2")


def _pair_sums(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Center values and the 6 pair-sum regressors over the 2-pixel-margin
    interior. Pairs: rows +-1, cols +-1, rows +-2, cols +-2, both diagonals."""
    c = x[2:-2, 2:-2]
    s = np.stack([
        x[1:-3, 2:-2] + x[3:-1, 2:-2],
        x[2:-2, 1:-3] + x[2:-2, 3:-1],
        x[:-4, 2:-2] + x[4:, 2:-2],
        x[2:-2, :-4] + x[2:-2, 4:],
        x[1:-3, 1:-3] + x[3:-1, 3:-1],
        x[1:-3, 3:-1] + x[3:-1, 1:-3],
    ])
    return c.ravel(), s.reshape(6, -1)


def gmrf_features(roi: Raster) -> FeatureVector:
    """Solve the 6x6 normal equations for the interaction coefficients, then
    the innovation variance from the interior residual.

    The ROI mean is subtracted first so a flat ROI degenerates cleanly to
    all-zero coefficients with zero variance. A singular normal matrix falls
    back to the pseudo-inverse (minimum-norm) solution and sets the
    degenerate flag.
    """
    if roi.height < 8 or roi.width < 8:
        raise ValueError(f"ROI must be at least 8x8, got {roi.height}x{roi.width}")
    m, n = roi.data.shape
    x = roi.data - roi.data.mean()
    if not np.any(x):
        return FeatureVector("GMRF", NAMES, np.zeros(7), degenerate=True)
    center, s = _pair_sums(x)
    gram = s @ s.T
    rhs = s @ center
    degenerate = False
    try:
        alpha = np.linalg.solve(gram, rhs)
        if not np.isfinite(alpha).all():
            raise np.linalg.LinAlgError
    except np.linalg.LinAlgError:
        alpha = np.linalg.pinv(gram) @ rhs
        degenerate = True
    resid = center - alpha @ s
    sigma2 = float(np.sum(resid * resid)) / ((m - 2) * (n - 2))
    values = np.concatenate([alpha, [sigma2]])
    return FeatureVector("GMRF", NAMES, values, degenerate=degenerate)
