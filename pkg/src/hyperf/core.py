"""Compact commutative hypergroups: dual points, character polynomials,
Fourier transform and inversion, L^p norms.

Functions on a hypergroup come in two flavours.  A :class:`CharacterPolynomial`
is a finite linear combination of characters and is handled algebraically
(its Fourier coefficients are ``c / k``).  Any other callable is a sampled
function and goes through the instance's Haar quadrature.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


class QuadratureResolutionError(ValueError):
    """The quadrature rule cannot integrate the requested integrand exactly."""


@dataclass(frozen=True)
class DualPoint:
    """One element of the dual: label, hyperdimension ``k`` and matrix size ``d``."""

    label: int
    hyperdim: float
    dim: int = 1

    def __post_init__(self):
        if not self.hyperdim > 0:
            raise ValueError(f"hyperdimension must be positive, got {self.hyperdim}")
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if self.hyperdim < self.dim * (1 - 1e-12):
            raise ValueError("hyperdimension must dominate the dimension")


@dataclass(frozen=True)
class QuadratureRule:
    """Discrete Haar rule: ``integral(f) = sum(weights * f(nodes))``.

    ``exact_degree`` is the largest character-label sum (label of ``f`` plus
    label of the test character) the rule integrates exactly.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int

    def integrate(self, values) -> complex:
        return complex(np.sum(self.weights * values))


class HypergroupInstance(abc.ABC):
    """A compact commutative hypergroup with integer-labelled dual ``0, 1, 2, ...``.

    Label 0 is always the trivial character.  Haar measure is normalized to 1.
    """

    name: str = "abstract"
    #: exponent used by the Hardy-Littlewood preset ``mu ** -beta``
    hl_beta: int = 3

    @abc.abstractmethod
    def log_hyperdims(self, level: int) -> np.ndarray:
        """``log k`` for labels ``0..level``."""

    def hyperdims(self, level: int) -> np.ndarray:
        return np.exp(self.log_hyperdims(level))

    def enumerate_dual(self, level: int) -> list[DualPoint]:
        if level < 0:
            raise ValueError("level must be >= 0")
        return [DualPoint(n, float(k)) for n, k in enumerate(self.hyperdims(level))]

    @abc.abstractmethod
    def character_matrix(self, level: int, x) -> np.ndarray:
        """Array ``X[n, i] = chi_n(x_i)`` for ``n = 0..level``."""

    def character_eval(self, label: int, x):
        out = self.character_matrix(label, np.atleast_1d(x))[label]
        return out if np.ndim(x) else out[0]

    @abc.abstractmethod
    def integration_rule(self, degree: int) -> QuadratureRule:
        """Haar rule exact for integrands of character-label degree ``degree``."""

    def haar_integrate(self, f: Callable, rule: QuadratureRule | None = None) -> complex:
        if rule is None:
            rule = self.integration_rule(self.default_degree)
        return rule.integrate(f(rule.nodes))

    default_degree: int = 64

    @abc.abstractmethod
    def norm_sampler(self, level: int) -> tuple[np.ndarray, np.ndarray]:
        """``(X, w)`` with ``||f||_p^p = sum_i w_i |(c @ X)_i|^p`` for every ``p`` used.

        ``X[n, i]`` is ``chi_n`` at node ``i``; the sup norm is the max over nodes.
        """

    def lp_norms(self, coeffs: np.ndarray, p: float) -> np.ndarray:
        """L^p norms of the character polynomials given row-wise by ``coeffs``."""
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        X, w = self.norm_sampler(coeffs.shape[1] - 1)
        return nodal_lp(coeffs @ X, w, p)

    @abc.abstractmethod
    def sampled_lp_norm(self, f: Callable, p: float) -> float:
        """L^p norm of an arbitrary function handle."""

    @abc.abstractmethod
    def log_hl_weights(self, level: int) -> np.ndarray:
        """``log mu`` for the Hardy-Littlewood growth preset."""

    @abc.abstractmethod
    def envelope_tail(self, level: int, s: float) -> float:
        """Upper bound for ``sum_{n > level} k_n ** -s``."""

    def describe(self) -> dict:
        return {"name": self.name}


def nodal_lp(values, weights, p: float) -> np.ndarray:
    """Row-wise ``(sum w |v|^p)^(1/p)``, or ``max |v|`` at ``p = inf``."""
    vals = np.abs(values)
    if np.isinf(p):
        return vals.max(axis=-1)
    return (vals ** p @ weights) ** (1.0 / p)


def _check_p(p: float) -> float:
    p = float(p)
    if not p >= 1:
        raise ValueError(f"exponent p must be >= 1, got {p}")
    return p


@dataclass(eq=False)
class CharacterPolynomial:
    """``f = sum_n coeffs[n] * chi_n`` on ``instance``."""

    instance: HypergroupInstance
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_mapping(cls, instance, mapping: dict[int, complex]) -> "CharacterPolynomial":
        top = max(mapping, default=0)
        c = np.zeros(top + 1, dtype=complex)
        for label, v in mapping.items():
            c[label] = v
        return cls(instance, c)

    @classmethod
    def character(cls, instance, label: int) -> "CharacterPolynomial":
        return cls.from_mapping(instance, {label: 1.0})

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def padded(self, level: int) -> np.ndarray:
        if level + 1 < self.coeffs.size and np.any(self.coeffs[level + 1:]):
            raise ValueError(f"polynomial has support beyond level {level}")
        out = np.zeros(level + 1, dtype=complex)
        n = min(level + 1, self.coeffs.size)
        out[:n] = self.coeffs[:n]
        return out

    def __call__(self, x):
        X = self.instance.character_matrix(self.coeffs.size - 1, np.atleast_1d(x))
        out = self.coeffs @ X
        return out if np.ndim(x) else out[0]

    def __add__(self, other: "CharacterPolynomial") -> "CharacterPolynomial":
        n = max(self.coeffs.size, other.coeffs.size) - 1
        return CharacterPolynomial(self.instance, self.padded(n) + other.padded(n))

    def __mul__(self, scalar) -> "CharacterPolynomial":
        return CharacterPolynomial(self.instance, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(eq=False)
class FourierCoefficients:
    """``values[n] = f^(chi_n)`` for ``n = 0..truncation_level``."""

    instance: HypergroupInstance
    values: np.ndarray
    truncation_level: int = field(default=-1)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex).reshape(-1)
        if self.truncation_level < 0:
            self.truncation_level = self.values.size - 1

    def plancherel_sum(self) -> float:
        k = self.instance.hyperdims(self.truncation_level)
        return math.fsum(k * np.abs(self.values) ** 2)


def coefficients_of(f: CharacterPolynomial, level: int | None = None) -> FourierCoefficients:
    """Algebraic transform: ``f^(chi) = c_chi / k_chi``."""
    level = f.degree if level is None else level
    k = f.instance.hyperdims(level)
    return FourierCoefficients(f.instance, f.padded(level) / k, level)


def fourier_transform(instance: HypergroupInstance, f: Callable, level: int,
                      rule: QuadratureRule | None = None) -> FourierCoefficients:
    """Fourier coefficients up to ``level`` by Haar quadrature.

    For a :class:`CharacterPolynomial` the default rule is chosen exact for
    the integrand; an explicit rule that is too coarse raises
    :class:`QuadratureResolutionError`.
    """
    if level < 0:
        raise ValueError("level must be >= 0")
    if isinstance(f, CharacterPolynomial):
        needed = f.degree + level
        if rule is None:
            rule = instance.integration_rule(needed)
        elif rule.exact_degree < needed:
            raise QuadratureResolutionError(
                f"rule is exact up to degree {rule.exact_degree}, integrand needs {needed}")
    elif rule is None:
        rule = instance.integration_rule(max(instance.default_degree, level))
    fx = np.asarray(f(rule.nodes), dtype=complex)
    X = instance.character_matrix(level, rule.nodes)
    values = (np.conj(X) * (rule.weights * fx)).sum(axis=1)
    return FourierCoefficients(instance, values, level)


def inverse_fourier(coeffs: FourierCoefficients) -> CharacterPolynomial:
    """``f = sum_chi k_chi f^(chi) chi``."""
    k = coeffs.instance.hyperdims(coeffs.truncation_level)
    return CharacterPolynomial(coeffs.instance, k * coeffs.values)


def lp_norm(instance: HypergroupInstance, f, p: float) -> float:
    """``(int |f|^p dlambda)^(1/p)``, essential sup for ``p = inf``."""
    p = _check_p(p)
    if isinstance(f, CharacterPolynomial):
        return float(instance.lp_norms(f.coeffs[None, :], p)[0])
    return float(instance.sampled_lp_norm(f, p))


def convolve(f: CharacterPolynomial, g: CharacterPolynomial) -> CharacterPolynomial:
    """Convolution, computed as the pointwise product of Fourier coefficients."""
    if f.instance is not g.instance:
        raise ValueError("polynomials live on different instances")
    n = max(f.degree, g.degree)
    fh = coefficients_of(f, n)
    gh = coefficients_of(g, n)
    return inverse_fourier(FourierCoefficients(f.instance, fh.values * gh.values, n))


def plancherel_defect(f: CharacterPolynomial) -> float:
    """``| ||f||_2^2 - sum k |f^|^2 |`` with the norm taken by quadrature."""
    lhs = lp_norm(f.instance, f, 2.0) ** 2
    return abs(lhs - coefficients_of(f).plancherel_sum())


def gram_matrix(instance: HypergroupInstance, level: int,
                rule: QuadratureRule | None = None, scaled: bool = False) -> np.ndarray:
    """Haar Gram matrix of ``chi_0..chi_level`` (of ``sqrt(k) chi`` if ``scaled``)."""
    if rule is None:
        rule = instance.integration_rule(2 * level)
    X = instance.character_matrix(level, rule.nodes)
    if scaled:
        X = X * np.sqrt(instance.hyperdims(level))[:, None]
    return (X * rule.weights) @ np.conj(X).T


def as_coefficient_matrix(functions: Sequence[CharacterPolynomial], level: int) -> np.ndarray:
    return np.stack([f.padded(level) for f in functions]) if functions else \
        np.zeros((0, level + 1), dtype=complex)
