"""Sequence spaces on the dual, Schatten norms, the Paley functional and
distribution functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .core import DualPoint, FourierCoefficients

RANK_TOL = 1e-12


def _check_p(p) -> float:
    p = float(p)
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return p


def singular_values(M) -> np.ndarray:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    s = np.linalg.svd(M, compute_uv=False)
    s[s < RANK_TOL * s.max(initial=0.0)] = 0.0
    return s


def schatten_norm(M, p) -> float:
    """``(sum s_j^p)^(1/p)`` over singular values; operator norm for ``p = inf``."""
    p = _check_p(p)
    s = singular_values(M)
    if math.isinf(p):
        return float(s.max(initial=0.0))
    return float(np.sum(s ** p) ** (1.0 / p))


def hs_norm(M) -> float:
    return float(np.linalg.norm(np.asarray(M, dtype=complex)))


@dataclass(eq=False)
class SpectralSequence:
    """``sigma(pi)`` in ``C^{d x d}`` for every ``pi`` in a truncated dual."""

    dual: tuple
    entries: tuple

    def __post_init__(self):
        self.dual = tuple(self.dual)
        self.entries = tuple(np.atleast_2d(np.asarray(e, dtype=complex)) for e in self.entries)
        if len(self.dual) != len(self.entries):
            raise ValueError("one entry per dual point is required")
        for pt, e in zip(self.dual, self.entries):
            if e.shape != (pt.dim, pt.dim):
                raise ValueError(f"entry at {pt.label} has shape {e.shape}, "
                                 f"expected {(pt.dim, pt.dim)}")

    @classmethod
    def scalar(cls, dual: Sequence[DualPoint], values) -> "SpectralSequence":
        return cls(tuple(dual), tuple(np.array([[v]]) for v in np.asarray(values)))

    @classmethod
    def from_fourier(cls, fh: FourierCoefficients) -> "SpectralSequence":
        return cls.scalar(fh.instance.enumerate_dual(fh.truncation_level), fh.values)

    @property
    def hyperdims(self) -> np.ndarray:
        return np.array([pt.hyperdim for pt in self.dual])


def lp_sch_norm(sigma: SpectralSequence, p) -> float:
    """``(sum k ||sigma||_{S^p}^p)^(1/p)``; sup of operator norms at ``p = inf``."""
    p = _check_p(p)
    if math.isinf(p):
        return max((schatten_norm(e, p) for e in sigma.entries), default=0.0)
    terms = [pt.hyperdim * schatten_norm(e, p) ** p for pt, e in zip(sigma.dual, sigma.entries)]
    return math.fsum(terms) ** (1.0 / p)


def lp_hs_norm(sigma: SpectralSequence, p) -> float:
    """``(sum k^(2 - p/2) ||sigma||_HS^p)^(1/p)``; ``sup k^(-1/2) ||sigma||_HS`` at ``p = inf``."""
    p = _check_p(p)
    if math.isinf(p):
        return max((hs_norm(e) / math.sqrt(pt.hyperdim)
                    for pt, e in zip(sigma.dual, sigma.entries)), default=0.0)
    terms = [pt.hyperdim ** (2 - p / 2) * hs_norm(e) ** p
             for pt, e in zip(sigma.dual, sigma.entries)]
    return math.fsum(terms) ** (1.0 / p)


def weighted_lp(abs_vals, log_weight, p) -> np.ndarray:
    """Row-wise ``(sum w |v|^p)^(1/p)`` with ``w = exp(log_weight)``, evaluated in log space.

    ``abs_vals`` may be 1-d or ``(batch, n)``.  ``p = inf`` gives ``max w |v|``
    (the caller folds the exponent into ``log_weight``).
    """
    v = np.atleast_2d(np.asarray(abs_vals, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        logv = np.log(v)
        if math.isinf(p):
            return np.exp(np.max(logv + log_weight, axis=1, initial=-np.inf))
        logt = p * logv + log_weight
        top = np.max(logt, axis=1, keepdims=True, initial=-np.inf)
        top = np.where(np.isfinite(top), top, 0.0)
        s = np.exp(logt - top).sum(axis=1)
        return np.exp((np.log(s) + top[:, 0]) / p)


@dataclass(eq=False)
class WeightFunction:
    """Strictly positive ``phi(pi)`` on a truncated dual with hyperdimensions ``k``."""

    values: np.ndarray
    hyperdims: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        self.hyperdims = np.asarray(self.hyperdims, dtype=float).reshape(-1)
        if self.values.shape != self.hyperdims.shape:
            raise ValueError("values and hyperdims must align")
        if np.any(~(self.values > 0)):
            raise ValueError("weight function must be strictly positive")

    @classmethod
    def on(cls, instance, level: int, values) -> "WeightFunction":
        return cls(values, instance.hyperdims(level))

    @classmethod
    def hl_preset(cls, instance, level: int, beta: float | None = None) -> "WeightFunction":
        """``phi = mu^-beta`` with the instance's Hardy-Littlewood growth ``mu``."""
        beta = instance.hl_beta if beta is None else beta
        return cls(np.exp(-beta * instance.log_hl_weights(level)), instance.hyperdims(level))

    @property
    def level(self) -> int:
        return self.values.size - 1

    def scaled(self, c: float) -> "WeightFunction":
        return WeightFunction(self.values * c, self.hyperdims)


def _superlevel_candidates(vals, k2):
    """Distinct positive values ``y`` (descending) and ``sum_{vals >= y} k2`` for each."""
    vals = np.asarray(vals, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    mask = vals > 0
    vals, k2 = vals[mask], k2[mask]
    if vals.size == 0:
        return vals, vals
    order = np.argsort(-vals, kind="stable")
    v, w = vals[order], np.cumsum(k2[order])
    last = np.r_[v[1:] != v[:-1], True]
    return v[last], w[last]


def mphi(phi: WeightFunction) -> float:
    """``sup_{y>0} y sum_{phi >= y} k^2`` over the truncated dual.

    Between consecutive values of ``phi`` the superlevel set is fixed and the
    product grows with ``y``, so the supremum sits at a value of ``phi``.
    """
    y, mass = _superlevel_candidates(phi.values, phi.hyperdims ** 2)
    return float(np.max(y * mass)) if y.size else 0.0


def mphi_argmax(phi: WeightFunction) -> int:
    """Index of the dual point whose ``phi`` value attains the supremum (lowest on ties)."""
    y, mass = _superlevel_candidates(phi.values, phi.hyperdims ** 2)
    best = y[int(np.argmax(y * mass))]
    return int(np.flatnonzero(phi.values == best)[0])


class DistributionReport(NamedTuple):
    thresholds: np.ndarray
    masses: np.ndarray
    level: int


def distribution_function(a, phi: WeightFunction, y_grid) -> DistributionReport:
    """``nu(y) = sum_{|a| >= y} phi^2 k^2`` for each threshold (correctly rounded sums)."""
    a = np.abs(np.asarray(a)).reshape(-1)
    y_grid = np.asarray(y_grid, dtype=float).reshape(-1)
    nu = phi.values ** 2 * phi.hyperdims ** 2
    masses = np.array([math.fsum(nu[a >= y]) for y in y_grid])
    return DistributionReport(y_grid, masses, phi.level)


def paley_weight_sum(phi: WeightFunction, w: float) -> float:
    """``sum_{phi <= w} phi^2 k^2``."""
    if not w > 0:
        raise ValueError("w must be positive")
    sel = phi.values <= w
    return math.fsum(phi.values[sel] ** 2 * phi.hyperdims[sel] ** 2)


class EmbeddingCheck(NamedTuple):
    sch: float
    hs: float
    holds: bool


def check_embeddings(sigma: SpectralSequence, p, rtol: float = 1e-12) -> EmbeddingCheck:
    """Compare the Schatten and Hilbert-Schmidt sequence norms.

    ``p <= 2`` expects ``sch <= hs``; ``p >= 2`` expects ``hs <= sch``.
    """
    p = _check_p(p)
    sch, hs = lp_sch_norm(sigma, p), lp_hs_norm(sigma, p)
    small, big = (sch, hs) if p <= 2 else (hs, sch)
    holds = small <= big * (1 + rtol) + 1e-300
    if p == 2:
        holds = holds and abs(sch - hs) <= rtol * max(sch, hs)
    return EmbeddingCheck(sch, hs, bool(holds))


def scht_pointwise_check(M, p, rtol: float = 1e-12) -> bool:
    """``||M||_{S^p}^p <= d^((2-p)/2) ||M||_HS^p`` for ``1 <= p <= 2``."""
    p = _check_p(p)
    if p > 2:
        raise ValueError("pointwise Schatten bound needs p <= 2")
    M = np.atleast_2d(M)
    d = M.shape[0]
    lhs = schatten_norm(M, p) ** p
    rhs = d ** ((2 - p) / 2) * hs_norm(M) ** p
    return bool(lhs <= rhs * (1 + rtol) + 1e-300)
