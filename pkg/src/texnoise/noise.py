"""Noise-family identification in uniform background regions.

The observed background histogram is compared against moment-matched
Gaussian, Rayleigh and Erlang densities; the family with the smallest
Matusita (first-order Hellinger) distance wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import special

from .errors import DegenerateNoiseError, GridMismatchError, InvalidParameterError
from .raster import Histogram, Raster, RoiSpec, histogram, moments

DEFAULT_BINS = 64


class NoiseFamily(str, Enum):
    GAUSSIAN = "gaussian"
    RAYLEIGH = "rayleigh"
    ERLANG = "erlang"


# tie-break order when two families reach the same distance
FAMILY_ORDER = (NoiseFamily.GAUSSIAN, NoiseFamily.RAYLEIGH, NoiseFamily.ERLANG)


@dataclass(frozen=True)
class NoiseModel:
    """A parametric noise density.

    params: Gaussian (mu, sigma2); Rayleigh (offset a, scale b) with density
    (2/b)(z-a)exp(-(z-a)^2/b) for z >= a; Erlang (rate a, integer shape b)
    with density a^b z^(b-1) exp(-a z)/(b-1)!.
    """

    family: NoiseFamily
    params: tuple[float, float]

    def mean(self) -> float:
        a, b = self.params
        if self.family is NoiseFamily.GAUSSIAN:
            return a
        if self.family is NoiseFamily.RAYLEIGH:
            return a + math.sqrt(math.pi * b / 4.0)
        return b / a

    def variance(self) -> float:
        a, b = self.params
        if self.family is NoiseFamily.GAUSSIAN:
            return b
        if self.family is NoiseFamily.RAYLEIGH:
            return b * (4.0 - math.pi) / 4.0
        return b / (a * a)

    def pdf(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.float64)
        a, b = self.params
        if self.family is NoiseFamily.GAUSSIAN:
            sigma2 = b
            return np.exp(-((z - a) ** 2) / (2.0 * sigma2)) / math.sqrt(2.0 * math.pi * sigma2)
        if self.family is NoiseFamily.RAYLEIGH:
            t = z - a
            out = np.where(t >= 0.0, (2.0 / b) * t * np.exp(-(t * t) / b), 0.0)
            return out
        # log-space evaluation keeps large integer shapes finite
        with np.errstate(divide="ignore", invalid="ignore"):
            logp = b * math.log(a) + (b - 1.0) * np.log(z) - a * z - special.gammaln(b)
        return np.where(z > 0.0, np.exp(logp), 0.0)

    def cdf(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.float64)
        a, b = self.params
        if self.family is NoiseFamily.GAUSSIAN:
            return special.ndtr((z - a) / math.sqrt(b))
        if self.family is NoiseFamily.RAYLEIGH:
            t = np.maximum(z - a, 0.0)
            return 1.0 - np.exp(-(t * t) / b)
        return special.gammainc(b, a * np.maximum(z, 0.0))

    def bin_masses(self, edges: np.ndarray) -> np.ndarray:
        """Probability mass inside each bin of ``edges`` (pdf integrated,
        not point-sampled); not renormalized over the grid."""
        return np.diff(self.cdf(edges))

    def sample_array(self, shape, rng: np.random.Generator) -> np.ndarray:
        a, b = self.params
        if self.family is NoiseFamily.GAUSSIAN:
            return rng.normal(a, math.sqrt(b), shape)
        if self.family is NoiseFamily.RAYLEIGH:
            return a + rng.rayleigh(math.sqrt(b / 2.0), shape)
        return rng.gamma(b, 1.0 / a, shape)


@dataclass(frozen=True)
class NoiseEstimate:
    """Identification result for one background region."""

    mu: float
    sigma2: float
    best: NoiseModel
    distances: dict[NoiseFamily, float]
    source_roi: RoiSpec | None = None

    def to_text(self) -> str:
        lines = [
            f"family = {self.best.family.value}",
            f"mu = {self.mu!r}",
            f"sigma2 = {self.sigma2!r}",
            f"param_a = {self.best.params[0]!r}",
            f"param_b = {self.best.params[1]!r}",
        ]
        for fam in FAMILY_ORDER:
            d = self.distances.get(fam)
            lines.append(f"distance_{fam.value} = {'' if d is None else repr(d)}")
        return "\n".join(lines) + "\n"


def fit_family(family: NoiseFamily, mu: float, sigma2: float) -> NoiseModel:
    """Moment-match one family to an observed (mean, variance) pair.

    Rayleigh solves both offset and scale from the two moments. The Erlang
    shape is rounded to the nearest integer >= 1 and the rate re-solved as
    shape/mean so the mean survives the rounding.
    """
    family = NoiseFamily(family)
    if sigma2 <= 0.0:
        raise InvalidParameterError(f"variance must be positive, got {sigma2}")
    if family is NoiseFamily.GAUSSIAN:
        return NoiseModel(family, (float(mu), float(sigma2)))
    if family is NoiseFamily.RAYLEIGH:
        b = 4.0 * sigma2 / (4.0 - math.pi)
        a = mu - math.sqrt(math.pi * b / 4.0)
        return NoiseModel(family, (float(a), float(b)))
    if mu <= 0.0:
        raise InvalidParameterError(f"Erlang needs a positive mean, got {mu}")
    shape = max(1, int(round(mu * mu / sigma2)))
    rate = shape / mu
    return NoiseModel(family, (float(rate), float(shape)))


def _as_probs(h) -> tuple[np.ndarray, np.ndarray | None]:
    if isinstance(h, Histogram):
        return h.normalized(), h.bin_edges
    arr = np.asarray(h, dtype=np.float64)
    return arr, None


def matusita(p, q) -> float:
    """Matusita distance sqrt(sum (sqrt(p_i) - sqrt(q_i))^2) between two
    discrete distributions on the same bin grid.

    Accepts `Histogram` objects (edges are checked) or plain probability
    arrays of equal length. Symmetric, with range [0, sqrt(2)].
    """
    pa, pe = _as_probs(p)
    qa, qe = _as_probs(q)
    if pe is not None and qe is not None:
        if pe.shape != qe.shape or not np.array_equal(pe, qe):
            raise GridMismatchError("histograms are defined on different bin grids")
    if pa.shape != qa.shape:
        raise GridMismatchError(f"length mismatch: {pa.shape} vs {qa.shape}")
    return float(np.sqrt(np.sum((np.sqrt(pa) - np.sqrt(qa)) ** 2)))


def identify(background: Raster, bins: int = DEFAULT_BINS,
             roi: RoiSpec | None = None) -> NoiseEstimate:
    """Identify the noise family in a uniform background raster.

    Fits all three candidate families to the sample moments, integrates each
    fitted pdf over the observed histogram's bins and returns the family with
    the minimum Matusita distance (ties broken Gaussian < Rayleigh < Erlang).
    """
    mom = moments(background)
    if mom.degenerate:
        raise DegenerateNoiseError(
            "background region has zero variance; no noise to identify"
        )
    hist = histogram(background, bins)
    p = hist.normalized()
    distances: dict[NoiseFamily, float] = {}
    models: dict[NoiseFamily, NoiseModel] = {}
    for fam in FAMILY_ORDER:
        try:
            model = fit_family(fam, mom.mean, mom.variance)
        except InvalidParameterError:
            continue
        q = model.bin_masses(hist.bin_edges)
        distances[fam] = matusita(p, q)
        models[fam] = model
    best_family = min(distances, key=lambda f: (distances[f], FAMILY_ORDER.index(f)))
    return NoiseEstimate(
        mu=mom.mean,
        sigma2=mom.variance,
        best=models[best_family],
        distances=distances,
        source_roi=roi,
    )


def sample(model: NoiseModel, width: int, height: int, seed: int) -> Raster:
    """Draw a (height, width) noise field from ``model``; deterministic for
    a fixed seed."""
    rng = np.random.default_rng(seed)
    return Raster(model.sample_array((height, width), rng))
