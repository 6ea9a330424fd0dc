"""Seeded test families and ratio reports for the Hausdorff-Young, Paley,
Hardy-Littlewood, Hausdorff-Young-Paley and duality inequalities.

Inequalities whose constant is known (Hausdorff-Young: 1, every inequality at
p = 2: equality) produce hard checks.  The others are reported as family
suprema and only checked for finiteness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import CharacterPolynomial, HypergroupInstance, as_coefficient_matrix
from .spectra import WeightFunction, mphi, weighted_lp

HY_TOL = 1e-9
ANCHOR_TOL = 1e-10
FAMILY_KINDS = ("spike", "random", "lacunary")

# exp(700) is close to the float64 ceiling
_LOG_CEILING = 700.0


class DivergentConditionError(ValueError):
    """The growth condition sum k^2 / mu^beta does not converge."""


class TruncationOverflowError(OverflowError):
    """Weights at the requested truncation level leave the float64 range."""

    def __init__(self, message, suggested_level):
        super().__init__(message)
        self.suggested_level = suggested_level


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class TestFamily:
    """A reproducible batch of character polynomials.

    ``random`` draws ``c_n = k_n^-decay * u`` with ``u`` uniform in the unit
    disk; ``lacunary`` does the same on labels ``2^j - 1``; ``spike`` cycles
    through single characters.  Function ``i`` uses its own generator seeded
    by ``(seed, i)`` and draws coefficients in label order, so raising
    ``level`` only appends coefficients.
    """

    __test__ = False

    kind: str = "random"
    seed: int = 0
    count: int = 200
    level: int = 40
    decay: float = 2.0

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.count < 1 or self.level < 0:
            raise ValueError("count must be >= 1 and level >= 0")

    def coefficients(self, instance: HypergroupInstance) -> np.ndarray:
        n = self.level + 1
        envelope = np.exp(-self.decay * instance.log_hyperdims(self.level))
        out = np.zeros((self.count, n), dtype=complex)
        if self.kind == "spike":
            out[np.arange(self.count), np.arange(self.count) % n] = 1.0
            return out
        mask = np.ones(n, dtype=bool)
        if self.kind == "lacunary":
            mask[:] = False
            mask[[2 ** j - 1 for j in range(n.bit_length() + 1) if 2 ** j - 1 < n]] = True
        for i in range(self.count):
            rng = np.random.default_rng([self.seed & 0xFFFFFFFFFFFFFFFF, i])
            u = rng.random((n, 2))
            out[i] = envelope * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1]) * mask
        return out

    def materialize(self, instance) -> list[CharacterPolynomial]:
        return [CharacterPolynomial(instance, c) for c in self.coefficients(instance)]

    def l2_tail_bound(self, instance) -> float:
        """Bound on the L^2 norm of the part of an envelope series beyond ``level``."""
        return math.sqrt(instance.envelope_tail(self.level, 2 * self.decay + 1))


def generate_family(kind="random", seed=0, count=200, level=40, decay=2.0) -> TestFamily:
    return TestFamily(kind, seed, count, level, decay)


def check_truncation(instance, level: int, decay: float = 2.0):
    """Raise :class:`TruncationOverflowError` if weights at ``level`` leave float range."""
    logk = float(instance.log_hyperdims(level)[-1])
    # the worst exponent used anywhere: k^(decay + 2) in envelopes and M_phi
    need = (decay + 2) * logk
    if need > _LOG_CEILING:
        per_level = logk / max(level, 1)
        cap = int(_LOG_CEILING / ((decay + 2) * per_level))
        raise TruncationOverflowError(
            f"truncation level {level} overflows float64 weights on {instance.name}; "
            f"use level <= {cap}", cap)


@dataclass
class RatioReport:
    """Per-function LHS / RHS with a family supremum and hard checks."""

    inequality: str
    params: dict
    level: int
    lhs: np.ndarray
    rhs: np.ndarray
    checks: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    tail_note: str = ""

    @property
    def ratios(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(self.lhs) / np.asarray(self.rhs)

    @property
    def sup(self) -> float:
        r = self.ratios
        return float(np.max(r)) if r.size else 0.0

    @property
    def finite(self) -> bool:
        return bool(np.all(np.isfinite(self.ratios)))

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "inequality": self.inequality,
            "params": self.params,
            "level": self.level,
            "sup_ratio": self.sup,
            "finite": self.finite,
            "checks": dict(self.checks),
            "lhs": [float(v) for v in self.lhs],
            "rhs": [float(v) for v in self.rhs],
            "ratio": [float(v) for v in self.ratios],
            **{k: [float(x) for x in v] for k, v in self.extra.items()},
            "tail_note": self.tail_note,
        }


def _coeffs(instance, family) -> tuple[np.ndarray, int]:
    if isinstance(family, TestFamily):
        check_truncation(instance, family.level, family.decay)
        return family.coefficients(instance), family.level
    if isinstance(family, np.ndarray):
        return np.atleast_2d(family).astype(complex), family.shape[-1] - 1
    level = max(f.coeffs.size for f in family) - 1
    return as_coefficient_matrix(list(family), level), level


def _abs_fourier(instance, C, level):
    """``|f^(chi_n)|`` row-wise, from ``f^ = c / k``."""
    return np.abs(C) * np.exp(-instance.log_hyperdims(level))


def _tail_note(instance, family) -> str:
    if isinstance(family, TestFamily) and family.kind != "spike":
        return (f"envelope k^-{family.decay:g}; L2 tail beyond level {family.level} "
                f"<= {family.l2_tail_bound(instance):.3e}")
    return ""


def verify_hausdorff_young(instance: HypergroupInstance, family, p: float) -> RatioReport:
    """``||f^||_{l^p'} <= ||f||_p`` and the Schatten variant, for ``1 <= p <= 2``.

    Scalar entries make the Schatten norm of ``f^(chi)`` equal ``|f^(chi)|``,
    so the Schatten sequence norm is ``(sum k |f^|^p')^(1/p')``.
    """
    if not 1 <= p <= 2:
        raise ValueError(f"Hausdorff-Young needs 1 <= p <= 2, got {p}")
    C, level = _coeffs(instance, family)
    q = conjugate_exponent(p)
    logk = instance.log_hyperdims(level)
    fh = _abs_fourier(instance, C, level)
    if math.isinf(q):
        lhs = weighted_lp(fh, -0.5 * logk, q)
        lhs_sch = weighted_lp(fh, 0.0 * logk, q)
    else:
        lhs = weighted_lp(fh, (2 - q / 2) * logk, q)
        lhs_sch = weighted_lp(fh, logk, q)
    rhs = instance.lp_norms(C, p)
    r, r_sch = lhs / rhs, lhs_sch / rhs
    checks = {
        "hy_l_pprime": bool(np.all(r <= 1 + HY_TOL)),
        "hy_schatten": bool(np.all(r_sch <= 1 + HY_TOL)),
        "ordering_l_le_sch": bool(np.all(lhs <= lhs_sch * (1 + 1e-12))),
    }
    if p == 2:
        checks["p2_equality"] = bool(np.all(np.abs(r - 1) <= ANCHOR_TOL)
                                     and np.all(np.abs(r_sch - 1) <= ANCHOR_TOL))
    return RatioReport("hausdorff_young", {"p": p}, level, lhs, rhs, checks,
                       {"lhs_sch": lhs_sch, "ratio_sch": r_sch}, _tail_note(instance, family))


def _phi_for(instance, phi, level) -> WeightFunction:
    if phi is None:
        return WeightFunction.hl_preset(instance, level)
    if phi.level < level:
        raise ValueError(f"weight defined up to level {phi.level}, family needs {level}")
    if phi.level > level:
        phi = WeightFunction(phi.values[:level + 1], phi.hyperdims[:level + 1])
    return phi


def paley_lhs(instance, C, level, phi: WeightFunction, p: float) -> np.ndarray:
    """``(sum k^2 (|f^|/sqrt k)^p phi^(2-p))^(1/p)`` row-wise."""
    logk = instance.log_hyperdims(level)
    logw = (2 - p / 2) * logk + (2 - p) * np.log(phi.values)
    return weighted_lp(_abs_fourier(instance, C, level), logw, p)


def verify_paley(instance: HypergroupInstance, family, p: float,
                 phi: WeightFunction | None = None) -> RatioReport:
    """Paley inequality with right side ``M_phi^((2-p)/p) ||f||_p``.

    ``phi`` defaults to the instance's Hardy-Littlewood preset ``mu^-beta``.
    """
    if not 1 < p <= 2:
        raise ValueError(f"Paley needs 1 < p <= 2, got {p}")
    C, level = _coeffs(instance, family)
    phi = _phi_for(instance, phi, level)
    m = mphi(phi)
    if not (m > 0 and math.isfinite(m)):
        raise ValueError(f"M_phi must be positive and finite, got {m}")
    lhs = paley_lhs(instance, C, level, phi, p)
    rhs = m ** ((2 - p) / p) * instance.lp_norms(C, p)
    report = RatioReport("paley", {"p": p, "M_phi": m}, level, lhs, rhs,
                         tail_note=_tail_note(instance, family))
    report.checks["finite"] = report.finite
    if p == 2:
        report.checks["p2_equality"] = bool(np.all(np.abs(report.ratios - 1) <= ANCHOR_TOL))
    return report


@dataclass
class HLCondition:
    """Partial sum of ``k^2 / mu^beta`` with tail information."""

    partial_sum: float
    level: int
    beta: float
    tail_bound: float | None = None
    limit: float | None = None
    exact: Fraction | None = None
    convergent: bool | None = None

    def to_dict(self):
        return {
            "partial_sum": self.partial_sum, "level": self.level, "beta": self.beta,
            "tail_bound": self.tail_bound, "limit": self.limit,
            "exact": None if self.exact is None else
            f"{self.exact.numerator}/{self.exact.denominator}",
            "convergent": self.convergent,
        }


def hl_condition(instance: HypergroupInstance, beta: float | None = None, level: int = 100,
                 mu: np.ndarray | None = None) -> HLCondition:
    """``sum_pi k^2 / mu^beta`` over labels ``0..level``.

    With the instance's own growth preset (``mu is None``) an analytic tail
    bound and the limit are attached; a custom ``mu`` gets the partial sum only.
    """
    beta = instance.hl_beta if beta is None else beta
    logk = instance.log_hyperdims(level)
    if mu is not None:
        terms = np.exp(2 * logk - beta * np.log(np.asarray(mu, dtype=float)[:level + 1]))
        return HLCondition(math.fsum(terms), level, beta)
    terms = instance.hl_condition_terms(level, beta)
    limit = instance.hl_condition_limit(beta)
    tail = instance.hl_condition_tail(level, beta)
    exact = getattr(instance, "hl_condition_exact", lambda b: None)(beta)
    return HLCondition(math.fsum(terms), level, beta, tail, limit, exact,
                       convergent=math.isfinite(limit))


def hl_exponent_identity(instance, beta=3) -> bool:
    """Derived exponent (as an affine function of p) equals the printed one."""
    return tuple(instance.hl_exponent(beta)) == tuple(instance.printed_hl_exponent)


def hl_log_weight(instance, level, p, beta=None, mu=None) -> np.ndarray:
    """``log(k^(2-p/2) mu^(beta(p-2)))``."""
    beta = instance.hl_beta if beta is None else beta
    logk = instance.log_hyperdims(level)
    logmu = instance.log_hl_weights(level) if mu is None else \
        np.log(np.asarray(mu, dtype=float)[:level + 1])
    return (2 - p / 2) * logk + beta * (p - 2) * logmu


def verify_hardy_littlewood(instance: HypergroupInstance, family, p: float,
                            beta: float | None = None, mu=None) -> RatioReport:
    """``(sum k^(2-p/2) mu^(beta(p-2)) |f^|^p)^(1/p)`` against ``||f||_p``."""
    if not 1 < p <= 2:
        raise ValueError(f"Hardy-Littlewood needs 1 < p <= 2, got {p}")
    beta = instance.hl_beta if beta is None else beta
    C, level = _coeffs(instance, family)
    cond = hl_condition(instance, beta, level, mu)
    if mu is None and not cond.convergent:
        raise DivergentConditionError(
            f"sum k^2 / mu^{beta} diverges on {instance.name}; increase beta")
    lhs = weighted_lp(_abs_fourier(instance, C, level), hl_log_weight(instance, level, p, beta, mu), p)
    rhs = instance.lp_norms(C, p)
    report = RatioReport("hardy_littlewood", {"p": p, "beta": beta}, level, lhs, rhs,
                         tail_note=_tail_note(instance, family))
    report.checks["finite"] = report.finite
    if mu is None and beta == instance.hl_beta:
        report.checks["exponent_identity"] = hl_exponent_identity(instance, beta)
    if p == 2:
        report.checks["p2_equality"] = bool(np.all(np.abs(report.ratios - 1) <= ANCHOR_TOL))
    return report


def verify_hyp(instance: HypergroupInstance, family, p: float, b: float,
               phi: WeightFunction | None = None) -> RatioReport:
    """Hausdorff-Young-Paley for ``1 < p <= b <= p'``.

    At ``b = p'`` the weight exponent vanishes and the Hausdorff-Young bound
    (constant 1) is checked; at ``b = p`` the Paley left side is reproduced.
    """
    if not 1 < p <= 2:
        raise ValueError(f"HYP needs 1 < p <= 2, got {p}")
    q = conjugate_exponent(p)
    if not p - 1e-12 <= b <= q + 1e-12:
        raise ValueError(f"b must lie in [p, p'] = [{p}, {q}], got {b}")
    C, level = _coeffs(instance, family)
    phi = _phi_for(instance, phi, level)
    m = mphi(phi)
    s = 1 / b - 1 / q
    logk = instance.log_hyperdims(level)
    logw = (2 - b / 2) * logk + b * s * np.log(phi.values)
    lhs = weighted_lp(_abs_fourier(instance, C, level), logw, b)
    rhs = m ** s * instance.lp_norms(C, p)
    report = RatioReport("hausdorff_young_paley", {"p": p, "b": b, "M_phi": m}, level, lhs, rhs,
                         tail_note=_tail_note(instance, family))
    report.checks["finite"] = report.finite
    if abs(b - q) <= 1e-12:
        report.checks["endpoint_hy"] = bool(np.all(report.ratios <= 1 + HY_TOL))
    if p == 2:
        report.checks["p2_equality"] = bool(np.all(np.abs(report.ratios - 1) <= ANCHOR_TOL))
    return report


def verify_duality_bound(instance: HypergroupInstance, family, p: float,
                         beta: float | None = None) -> RatioReport:
    """``||f||_p`` against ``(sum k^(2-p/2) mu^(beta(p-2)) |f^|^p)^(1/p)`` for ``p >= 2``.

    On Conj(SU(2)) the weight is ``(2l+1)^(5p-8)``.  Here the ratio is
    ``||f||_p / (...)``, the reverse orientation of the other reports.
    """
    if not 2 <= p < math.inf:
        raise ValueError(f"duality bound needs 2 <= p < inf, got {p}")
    C, level = _coeffs(instance, family)
    rhs = weighted_lp(_abs_fourier(instance, C, level), hl_log_weight(instance, level, p, beta), p)
    lhs = instance.lp_norms(C, p)
    report = RatioReport("duality", {"p": p, "beta": instance.hl_beta if beta is None else beta},
                         level, lhs, rhs, tail_note=_tail_note(instance, family))
    report.checks["finite"] = report.finite
    if p == 2:
        report.checks["p2_equality"] = bool(np.all(np.abs(report.ratios - 1) <= ANCHOR_TOL))
    return report


def scale_family(family: TestFamily, instance, c: complex) -> np.ndarray:
    return c * family.coefficients(instance)


def refinement_table(instance, family: TestFamily, levels: Sequence[int], verify, **kw):
    """Run ``verify`` on ``family`` re-truncated at each level; returns the reports."""
    return [verify(instance, TestFamily(family.kind, family.seed, family.count, lv,
                                        family.decay), **kw) for lv in levels]
