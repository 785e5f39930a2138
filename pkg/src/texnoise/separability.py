"""Two-class Fisher separability and the per-method susceptibility ranking.

The criterion is the ratio of between-class to within-class scatter along
the closed-form two-class discriminant direction; a small value means the
two feature classes are nearly indistinguishable, i.e. the texture method
barely reacts to the perturbation that separates them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DimensionMismatchError, IncompleteInputError
from .texture.common import METHODS

J_CAP = 1e12


@dataclass(frozen=True, eq=False)
class ScatterPair:
    """Between/within scatter matrices and the class means behind them."""

    s_b: np.ndarray
    s_w: np.ndarray
    mean_a: np.ndarray
    mean_b: np.ndarray
    n_a: int
    n_b: int


@dataclass(frozen=True)
class FisherResult:
    """Criterion value; ``capped`` marks an unbounded ratio reported as J_CAP."""

    j: float
    capped: bool = False


@dataclass(frozen=True)
class SeparabilityReport:
    """Original-vs-clean and original-vs-noisy criterion values per method,
    plus both rankings sorted ascending (least separable first)."""

    j_clean: dict[str, FisherResult]
    j_noisy: dict[str, FisherResult]
    ranking_clean: tuple[str, ...]
    ranking_noisy: tuple[str, ...]


def scatter(class_a: np.ndarray, class_b: np.ndarray) -> ScatterPair:
    """Within-class scatter (summed centered Gram matrices) and between-class
    scatter (class-size-weighted mean offsets from the pooled mean)."""
    a = np.asarray(class_a, dtype=np.float64)
    b = np.asarray(class_b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(
            f"classes must be 2-D with equal feature count, got {a.shape} and {b.shape}"
        )
    if a.shape[0] < 2 or b.shape[0] < 2:
        raise ValueError("each class needs at least 2 samples")
    mean_a = a.mean(axis=0)
    mean_b = b.mean(axis=0)
    ca = a - mean_a
    cb = b - mean_b
    s_w = ca.T @ ca + cb.T @ cb
    n_a, n_b = a.shape[0], b.shape[0]
    pooled = (n_a * mean_a + n_b * mean_b) / (n_a + n_b)
    da = (mean_a - pooled)[:, None]
    db = (mean_b - pooled)[:, None]
    s_b = n_a * (da @ da.T) + n_b * (db @ db.T)
    return ScatterPair(s_b=s_b, s_w=s_w, mean_a=mean_a, mean_b=mean_b,
                       n_a=n_a, n_b=n_b)


def fisher_j(pair: ScatterPair, ridge: float = 1e-6) -> FisherResult:
    """Evaluate the criterion at w = (S_w + ridge*trace/d * I)^-1 (m_a - m_b).

    With two classes the between-class scatter has rank one, so this single
    direction attains the largest generalized eigenvalue of the (ridged)
    scatter pencil. A within-scatter that stays singular despite the ridge
    yields 0 for coincident means and the capped sentinel otherwise.
    """
    d = pair.s_w.shape[0]
    delta = pair.mean_a - pair.mean_b
    if not np.any(delta):
        return FisherResult(0.0)
    reg = pair.s_w
    if ridge > 0.0:
        reg = pair.s_w + (ridge * np.trace(pair.s_w) / d) * np.eye(d)
    try:
        w = np.linalg.solve(reg, delta)
        if not np.isfinite(w).all():
            raise np.linalg.LinAlgError
    except np.linalg.LinAlgError:
        return FisherResult(J_CAP, capped=True)
    denom = float(w @ reg @ w)
    numer = float(w @ pair.s_b @ w)
    if denom <= 0.0 or not np.isfinite(denom):
        if numer <= 0.0:
            return FisherResult(0.0)
        return FisherResult(J_CAP, capped=True)
    j = numer / denom
    if not np.isfinite(j) or j >= J_CAP:
        return FisherResult(J_CAP, capped=True)
    return FisherResult(max(j, 0.0))


def _as_result(value) -> FisherResult:
    if isinstance(value, FisherResult):
        return value
    return FisherResult(float(value))


def _ranked(values: dict[str, FisherResult]) -> tuple[str, ...]:
    return tuple(sorted(values, key=lambda m: (values[m].j, m)))


def rank_methods(j_clean: Mapping[str, FisherResult | float],
                 j_noisy: Mapping[str, FisherResult | float]) -> SeparabilityReport:
    """Ascending stable sort of all 7 methods by criterion value for both
    comparisons; ties break lexicographically by method name."""
    clean = {m: _as_result(v) for m, v in j_clean.items()}
    noisy = {m: _as_result(v) for m, v in j_noisy.items()}
    for label, values in (("clean", clean), ("noisy", noisy)):
        missing = [m for m in METHODS if m not in values]
        if missing:
            raise IncompleteInputError(f"{label} values missing methods: {missing}")
    clean = {m: clean[m] for m in METHODS}
    noisy = {m: noisy[m] for m in METHODS}
    return SeparabilityReport(
        j_clean=clean,
        j_noisy=noisy,
        ranking_clean=_ranked(clean),
        ranking_noisy=_ranked(noisy),
    )
