"""Conjugacy classes of SU(2) as a commutative hypergroup on [0, 1].

The point ``t`` stands for the class of ``diag(exp(i pi t), exp(-i pi t))``.
Dual labels are ``m = 2l`` so that ``2l + 1 = m + 1``; the hyperdimension is
``(m + 1)**2``.  Haar measure is ``2 sin(pi t)**2 dt`` (Weyl integration).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import roots_legendre, zeta

from .core import HypergroupInstance, QuadratureRule

_SINGULAR = 1e-8
# +8 leaves ~1e-10 error at the top frequency for low degrees; +16 is at roundoff
GL_MARGIN = 16


@dataclass(frozen=True)
class QuantumIndex:
    """Quantum number ``l = m / 2`` stored as the integer ``m``."""

    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def l(self) -> Fraction:
        return Fraction(self.m, 2)

    @property
    def hyperdim(self) -> int:
        return (self.m + 1) ** 2

    dim = 1


def character_eval(m: int, t):
    """``sin((m+1) pi t) / ((m+1) sin(pi t))`` with the removable singularities filled."""
    t = np.asarray(t, dtype=float)
    s = np.sin(np.pi * t)
    small = np.abs(s) < _SINGULAR
    safe = np.where(small, 1.0, s)
    out = np.sin((m + 1) * np.pi * t) / ((m + 1) * safe)
    # near t = 0 the limit is 1, near t = 1 it is (-1)^m
    limit = np.where(t > 0.5, (-1.0) ** m, 1.0)
    out = np.where(small, limit, out)
    return out if out.ndim else float(out)


def haar_density(t):
    return 2.0 * np.sin(np.pi * np.asarray(t, dtype=float)) ** 2


def gauss_legendre_rule(n: int) -> QuadratureRule:
    """``n``-point Gauss-Legendre on [0, 1] with the Haar density folded into the weights."""
    x, w = roots_legendre(n)
    t = 0.5 * (x + 1.0)
    # chi_m chi_m' times the density has frequency m + m' + 2 (in units of pi t)
    return QuadratureRule(t, 0.5 * w * haar_density(t), max(n - GL_MARGIN - 2, 0))


def midpoint_rule(n: int) -> QuadratureRule:
    """Periodic midpoint rule; exact for trig polynomials in ``pi t`` of frequency < 2n."""
    t = (np.arange(n) + 0.5) / n
    return QuadratureRule(t, haar_density(t) / n, 2 * n - 3)


def default_rule(degree: int) -> QuadratureRule:
    """Gauss-Legendre with node count = integrand frequency + ``GL_MARGIN``."""
    return gauss_legendre_rule(degree + 2 + GL_MARGIN)


def haar_integrate(f, rule: QuadratureRule | None = None, degree: int = 64) -> complex:
    if rule is None:
        rule = default_rule(degree)
    return rule.integrate(f(rule.nodes))


def hl_weight(m: int) -> int:
    """Hardy-Littlewood growth ``mu = (2l + 1)**2``."""
    return (m + 1) ** 2


def paley_weight(m, power: float = 6.0):
    """``phi(l) = (2l + 1)**-power``; ``power = 6`` is ``mu ** -3``."""
    return (np.asarray(m, dtype=float) + 1.0) ** -power


class ConjSU2(HypergroupInstance):
    """Conj(SU(2)).

    Parameters
    ----------
    lp_nodes : int
        Minimum node count of the midpoint rule used for L^p norms.  The rule
        always has at least ``32 * (degree + 2)`` nodes.
    """

    name = "conj_su2"
    hl_beta = 3

    def __init__(self, lp_nodes: int = 1024):
        self.lp_nodes = int(lp_nodes)
        self._cache: dict = {}

    def log_hyperdims(self, level):
        return 2.0 * np.log(np.arange(1, level + 2, dtype=float))

    def hyperdims(self, level):
        return np.arange(1, level + 2, dtype=float) ** 2

    def character_matrix(self, level, x):
        x = np.asarray(x, dtype=float)
        return np.stack([character_eval(m, x) for m in range(level + 1)]) \
            if level >= 0 else np.zeros((0, x.size))

    def integration_rule(self, degree):
        return default_rule(degree)

    def _lp_rule(self, level):
        n = max(self.lp_nodes, 32 * (level + 2))
        key = ("lp", level, n)
        if key not in self._cache:
            rule = midpoint_rule(n)
            self._cache[key] = (rule, self.character_matrix(level, rule.nodes))
        return self._cache[key]

    def norm_sampler(self, level):
        rule, X = self._lp_rule(level)
        return X, rule.weights

    def sampled_lp_norm(self, f, p, n: int | None = None):
        rule = midpoint_rule(n or max(self.lp_nodes, 4096))
        vals = np.abs(np.asarray(f(rule.nodes), dtype=complex))
        if np.isinf(p):
            return float(vals.max())
        return float((vals ** p @ rule.weights) ** (1.0 / p))

    def log_hl_weights(self, level):
        return 2.0 * np.log(np.arange(1, level + 2, dtype=float))

    def envelope_tail(self, level, s):
        # sum_{n > N} n^(-2s) <= N^(1-2s) / (2s - 1), N = level + 1
        e = 2.0 * s
        if e <= 1:
            return float("inf")
        n = level + 1
        return n ** (1.0 - e) / (e - 1.0)

    # Hardy-Littlewood condition sum_{n >= 1} n^4 / n^(2 beta) = zeta(2 beta - 4)
    def hl_condition_terms(self, level, beta):
        n = np.arange(1, level + 2, dtype=float)
        return n ** (4.0 - 2.0 * beta)

    def hl_condition_limit(self, beta):
        s = 2.0 * beta - 4.0
        return float(zeta(s)) if s > 1 else float("inf")

    def hl_condition_tail(self, level, beta):
        s = 2.0 * beta - 4.0
        if s <= 1:
            return float("inf")
        n = level + 1
        return n ** (1.0 - s) / (s - 1.0)

    def hl_exponent(self, beta=3):
        """Exponent of ``(2l+1)`` in ``k^(2-p/2) mu^(beta (p-2))`` as ``(slope, intercept)`` in p."""
        beta = Fraction(beta)
        # k = n^2, mu = n^2
        return (2 * Fraction(-1, 2) + 2 * beta, 2 * 2 - 4 * beta)

    printed_hl_exponent = (Fraction(5), Fraction(-8))
