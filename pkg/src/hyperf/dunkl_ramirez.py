"""The countable compact hypergroup H_a on {0, 1, 2, ..., inf}, 0 < a <= 1/2.

Everything here works with either floats or :class:`fractions.Fraction`; pass
a rational ``a`` (``Fraction`` or a ``"num/den"`` string) to get exact table
identities.  The point at infinity is ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import numpy as np

from .core import HypergroupInstance, QuadratureRule

INF = math.inf


def parse_a(a) -> Fraction | float:
    """Accept ``Fraction``, ``int``, ``"1/3"`` (exact) or a float."""
    if isinstance(a, str):
        a = Fraction(a.strip())
    elif isinstance(a, int):
        a = Fraction(a)
    elif isinstance(a, Fraction):
        pass
    elif isinstance(a, Real):
        a = float(a)
    else:
        raise TypeError(f"cannot interpret {a!r} as a hypergroup parameter")
    if not 0 < a <= Fraction(1, 2):
        raise ValueError(f"parameter a must lie in (0, 1/2], got {a}")
    return a


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def haar_weight(x, a):
    """``lambda({k}) = a^k (1 - a)``, ``lambda({inf}) = 0``."""
    if _is_inf(x):
        return 0 * a
    return a ** x * (1 - a)


def character_eval(n: int, x, a):
    """``chi_n(x)``: 0 below ``n - 1``, ``a/(a-1)`` at ``n - 1``, 1 from ``n`` on."""
    if n == 0 or _is_inf(x) or x >= n:
        return 1 + 0 * a
    if x == n - 1:
        return a / (a - 1)
    return 0 * a


def plancherel_weight(n: int, a):
    """``omega(chi_0) = 1``, ``omega(chi_n) = (1 - a) a^-n``."""
    if n == 0:
        return 1 + 0 * a
    return (1 - a) / a ** n


@dataclass(frozen=True)
class EventuallyConstantFunction:
    """Values ``prefix[0..N-1]`` then the constant ``tail`` on ``{N, ..., inf}``."""

    prefix: tuple
    tail: object

    @classmethod
    def character(cls, n: int, a) -> "EventuallyConstantFunction":
        return cls(tuple(character_eval(n, k, a) for k in range(n)), 1 + 0 * a)

    @classmethod
    def indicator(cls, k: int, a=Fraction(0)) -> "EventuallyConstantFunction":
        zero, one = 0 * a, 1 + 0 * a
        return cls(tuple(one if j == k else zero for j in range(k + 1)), zero)

    @classmethod
    def constant(cls, c) -> "EventuallyConstantFunction":
        return cls((), c)

    def __len__(self):
        return len(self.prefix)

    def __call__(self, x):
        if _is_inf(x) or x >= len(self.prefix):
            return self.tail
        return self.prefix[x]

    def _extended(self, n):
        return self.prefix + (self.tail,) * (n - len(self.prefix))

    def _combine(self, other, op):
        n = max(len(self), len(other))
        a, b = self._extended(n), other._extended(n)
        return EventuallyConstantFunction(tuple(op(u, v) for u, v in zip(a, b)),
                                          op(self.tail, other.tail))

    def __add__(self, other):
        if not isinstance(other, EventuallyConstantFunction):
            other = EventuallyConstantFunction.constant(other)
        return self._combine(other, lambda u, v: u + v)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, EventuallyConstantFunction):
            return self._combine(other, lambda u, v: u * v)
        return EventuallyConstantFunction(tuple(v * other for v in self.prefix),
                                          self.tail * other)

    __rmul__ = __mul__

    def conjugate(self):
        conj = lambda v: v.conjugate() if hasattr(v, "conjugate") else v
        return EventuallyConstantFunction(tuple(conj(v) for v in self.prefix),
                                          conj(self.tail))

    def sup_norm(self):
        return max([abs(v) for v in self.prefix] + [abs(self.tail)])


@dataclass(frozen=True)
class GeometricTailMeasure:
    """Finite atoms plus tails ``sum_{j >= 1} c a^j delta_{s + j}`` plus an atom at inf.

    ``tails`` holds ``(s, c)`` pairs.
    """

    a: object
    atoms: dict = field(default_factory=dict)
    tails: tuple = ()
    infinity_atom: object = 0

    def total_mass(self):
        a = self.a
        mass = sum(self.atoms.values(), 0 * a)
        mass += sum((c * a / (1 - a) for _, c in self.tails), 0 * a)
        return mass + self.infinity_atom

    def weight(self, k):
        """Mass at a single point."""
        if _is_inf(k):
            return self.infinity_atom
        w = self.atoms.get(k, 0 * self.a)
        for s, c in self.tails:
            if k > s:
                w += c * self.a ** (k - s)
        return w


def point_convolve(m, n, a) -> GeometricTailMeasure:
    """``delta_m * delta_n``."""
    one = 1 + 0 * a
    if _is_inf(m) and _is_inf(n):
        return GeometricTailMeasure(a, {}, (), one)
    if m != n:
        return GeometricTailMeasure(a, {min(m, n): one}, (), 0 * a)
    return GeometricTailMeasure(a, {m: (1 - 2 * a) / (1 - a)}, ((m, one),), 0 * a)


def integrate_against(mu: GeometricTailMeasure, f: EventuallyConstantFunction):
    """``int f dmu`` in closed form (tails summed geometrically)."""
    a = mu.a
    total = 0 * a
    for k, w in mu.atoms.items():
        total += w * f(k)
    n = len(f)
    for s, c in mu.tails:
        # explicit part: s + j < n
        for j in range(1, max(n - s, 1)):
            total += c * a ** j * f(s + j)
        first = max(1, n - s)
        total += c * f.tail * a ** first / (1 - a)
    return total + mu.infinity_atom * f.tail


def dual_convolve(m: int, n: int, a) -> dict[int, object]:
    """``delta_chi_m * delta_chi_n`` on the dual, as ``{label: weight}``."""
    one = 1 + 0 * a
    if m != n:
        return {max(m, n): one}
    if n == 0:
        return {0: one}
    out = {0: a ** n / (1 - a)}
    for k in range(1, n):
        out[k] = a ** (n - k)
    out[n] = (1 - 2 * a) / (1 - a)
    return out


def lp_norm_power(f: EventuallyConstantFunction, p: int, a):
    """``||f||_p^p`` for integer ``p`` (exact when ``a`` and the values are rational)."""
    n = len(f)
    total = sum((abs(v) ** p * a ** k * (1 - a) for k, v in enumerate(f.prefix)), 0 * a)
    return total + abs(f.tail) ** p * a ** n


def lp_norm_exact(f: EventuallyConstantFunction, p, a) -> float:
    """``(sum_{k<N} |v_k|^p a^k (1-a) + |tail|^p a^N)^(1/p)``; sup norm for ``p = inf``."""
    p = float(p)
    if p < 1:
        raise ValueError("p must be >= 1")
    if math.isinf(p):
        return float(f.sup_norm())
    if p.is_integer():
        return float(lp_norm_power(f, int(p), a)) ** (1.0 / p)
    af = float(a)
    n = len(f)
    s = math.fsum(abs(complex(v)) ** p * af ** k * (1 - af) for k, v in enumerate(f.prefix))
    return (s + abs(complex(f.tail)) ** p * af ** n) ** (1.0 / p)


def verify_measure_algebra(a, max_index: int = 12) -> dict[str, bool]:
    """Exact table identities for labels and points ``0..max_index``.

    Returns a verdict per identity family: probability masses of point and
    dual convolutions, commutativity, character multiplicativity against
    ``delta_m * delta_k``, and the dual pointwise-product table.
    """
    a = parse_a(a)
    idx = range(max_index + 1)
    pts = list(idx) + [INF]
    chars = {n: EventuallyConstantFunction.character(n, a) for n in idx}
    masses = all(point_convolve(m, k, a).total_mass() == 1 for m in pts for k in pts)
    dual_masses = all(sum(dual_convolve(m, n, a).values()) == 1 for m in idx for n in idx)
    commutative = all(point_convolve(m, k, a) == point_convolve(k, m, a)
                      for m in pts for k in pts)
    multiplicative = all(
        integrate_against(point_convolve(m, k, a), chars[n])
        == character_eval(n, m, a) * character_eval(n, k, a)
        for m in pts for k in pts for n in idx)
    dual_table = all(
        character_eval(m, k, a) * character_eval(n, k, a)
        == sum(w * character_eval(j, k, a) for j, w in dual_convolve(m, n, a).items())
        for m in idx for n in idx for k in pts)
    plancherel = all(
        lp_norm_power(chars[n], 2, a) * plancherel_weight(n, a) == 1 for n in idx)
    haar_total = sum(haar_weight(k, a) for k in idx) + a ** (max_index + 1) == 1
    hermitian = all(character_eval(n, k, a) == character_eval(n, k, a).conjugate()
                    for n in idx for k in pts)
    return {
        "point_convolution_mass": masses,
        "dual_convolution_mass": dual_masses,
        "commutativity": commutative,
        "character_multiplicativity": multiplicative,
        "dual_table_product": dual_table,
        "plancherel_weights": plancherel,
        "haar_total_mass": haar_total,
        "real_characters": hermitian,
    }


class DunklRamirez(HypergroupInstance):
    """H_a as a :class:`HypergroupInstance` (float path)."""

    name = "dunkl_ramirez"
    hl_beta = 3

    def __init__(self, a=Fraction(1, 3)):
        self.a = parse_a(a)
        self.af = float(self.a)
        self._log_a = math.log(self.af)
        self._log_1ma = math.log1p(-self.af)

    def describe(self):
        a = self.a
        return {"name": self.name,
                "a": f"{a.numerator}/{a.denominator}" if isinstance(a, Fraction) else repr(a)}

    def log_hyperdims(self, level):
        n = np.arange(level + 1, dtype=float)
        out = self._log_1ma - n * self._log_a
        out[0] = 0.0
        return out

    def character_matrix(self, level, x):
        x = np.asarray(x, dtype=float)
        n = np.arange(level + 1)[:, None]
        out = np.where(x[None, :] >= n, 1.0, 0.0)
        out = np.where(x[None, :] == n - 1, self.af / (self.af - 1.0), out)
        return out

    def integration_rule(self, degree):
        # a product of characters with labels summing to d is constant on
        # {d, d+1, ...}; node d carries that whole mass a^d
        k = np.arange(degree + 1, dtype=float)
        w = self.af ** k * (1 - self.af)
        w[-1] = self.af ** degree
        return QuadratureRule(k, w, degree)

    def _prefix(self, level):
        k = np.arange(level, dtype=float)
        X = self.character_matrix(level, k)
        w = self.af ** k * (1 - self.af)
        return X, w, self.af ** level

    def norm_sampler(self, level):
        # points k < level, then one node for {level, level+1, ..., inf}
        # where every chi_n with n <= level equals 1
        X, w, tail_mass = self._prefix(level)
        return (np.hstack([X, np.ones((level + 1, 1))]), np.r_[w, tail_mass])

    def sampled_lp_norm(self, f, p, n_terms: int = 200):
        k = np.arange(n_terms, dtype=float)
        vals = np.abs(np.asarray(f(k), dtype=complex))
        if np.isinf(p):
            return float(max(vals.max(), abs(complex(f(np.array([INF]))[0]))))
        w = self.af ** k * (1 - self.af)
        w[-1] = self.af ** (n_terms - 1)
        return float((vals ** p @ w) ** (1.0 / p))

    def log_hl_weights(self, level):
        return self.log_hyperdims(level)

    def envelope_tail(self, level, s):
        # sum_{n > L} ((1-a) a^-n)^-s = (1-a)^-s a^(s(L+1)) / (1 - a^s)
        a = self.af
        return (1 - a) ** -s * a ** (s * (level + 1)) / (1 - a ** s)

    def hl_condition_terms(self, level, beta):
        t = np.exp((2.0 - beta) * self.log_hyperdims(level))
        t[0] = 1.0
        return t

    def hl_condition_exact(self, beta, level=None):
        """Exact sum of ``k^2 / mu^beta`` (whole dual, or labels ``0..level``)."""
        a = self.a
        if not isinstance(a, Fraction) or int(beta) != beta:
            return None
        beta = int(beta)
        if level is None:
            if beta <= 2:
                return None
            r = a ** (beta - 2)
            return 1 + (1 - a) ** (2 - beta) * r / (1 - r)
        return 1 + sum(((1 - a) / a ** n) ** (2 - beta) for n in range(1, level + 1))

    def hl_condition_limit(self, beta):
        if beta <= 2:
            return float("inf")
        exact = self.hl_condition_exact(beta)
        if exact is not None:
            return float(exact)
        a = self.af
        r = a ** (beta - 2)
        return 1 + (1 - a) ** (2 - beta) * r / (1 - r)

    def hl_condition_tail(self, level, beta):
        if beta <= 2:
            return float("inf")
        a = self.af
        r = a ** (beta - 2)
        return (1 - a) ** (2 - beta) * r ** (level + 1) / (1 - r)

    def hl_exponent(self, beta=3):
        """Exponent of ``omega = (1-a) a^-n`` as ``(slope, intercept)`` in p."""
        beta = Fraction(beta)
        # k = mu = omega
        return (Fraction(-1, 2) + beta, 2 - 2 * beta)

    # p (5/2 - 4/p) = 5p/2 - 4
    printed_hl_exponent = (Fraction(5, 2), Fraction(-4))
