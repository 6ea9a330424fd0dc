"""Diagonal Fourier multipliers, the Hormander-type L^p-L^q functional and
empirical operator-norm lower bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import CharacterPolynomial, HypergroupInstance, nodal_lp
from .inequalities import conjugate_exponent

SHARP_TOL = 1e-6


@dataclass(eq=False)
class MultiplierSymbol:
    """Scalar symbol ``sigma(chi_n)`` for ``n = 0..level``."""

    instance: HypergroupInstance
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(self.values)):
            raise ValueError("symbol must be bounded")

    @property
    def level(self) -> int:
        return self.values.size - 1

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.values), initial=0.0))

    @property
    def argmax(self) -> int:
        return int(np.argmax(np.abs(self.values)))

    @classmethod
    def random(cls, instance, level: int, seed: int, index: int = 0) -> "MultiplierSymbol":
        """``|sigma|`` uniform on [0, 1) with uniform phase, from stream ``(seed, index)``."""
        rng = np.random.default_rng([seed, 0x5EED, index])
        u = rng.random((level + 1, 2))
        return cls(instance, u[:, 0] * np.exp(2j * np.pi * u[:, 1]))

    @classmethod
    def riesz(cls, instance, level: int, gamma: float) -> "MultiplierSymbol":
        """``sigma = mu^(-gamma/2)``, i.e. ``(2l+1)^-gamma`` on Conj(SU(2))."""
        return cls(instance, np.exp(-0.5 * gamma * instance.log_hl_weights(level)))

    @classmethod
    def indicator(cls, instance, level: int, label: int, value: complex = 1.0):
        v = np.zeros(level + 1, dtype=complex)
        v[label] = value
        return cls(instance, v)


def apply(sigma: MultiplierSymbol, f: CharacterPolynomial) -> CharacterPolynomial:
    """``(Af)^ = sigma f^``; in coefficient form this is ``sigma * c``."""
    if f.instance is not sigma.instance:
        raise ValueError("symbol and function live on different instances")
    if f.degree > sigma.level:
        raise ValueError(f"symbol undefined at label {f.degree} (defined up to {sigma.level})")
    c = f.padded(sigma.level)
    return CharacterPolynomial(f.instance, sigma.values * c)


def superlevel_functional(abs_sigma, k, exponent: float) -> float:
    """``sup_{y>0} y (sum_{|sigma| >= y} k^2)^exponent`` over the breakpoints ``y = |sigma|``.

    Only ``y`` with a nonempty superlevel set count, so ``sigma = 0`` gives 0.
    """
    vals = np.asarray(abs_sigma, dtype=float)
    k2 = np.asarray(k, dtype=float) ** 2
    mask = vals > 0
    vals, k2 = vals[mask], k2[mask]
    if vals.size == 0:
        return 0.0
    order = np.argsort(-vals, kind="stable")
    v, mass = vals[order], np.cumsum(k2[order])
    last = np.r_[v[1:] != v[:-1], True]
    return float(np.max(v[last] * mass[last] ** exponent))


def _check_pq(p, q):
    if p == q and 1 <= p < math.inf:
        return
    if not (1 < p <= 2 <= q < math.inf):
        raise ValueError(f"need 1 < p <= 2 <= q < inf (or p = q), got p={p}, q={q}")


def hormander_functional(sigma: MultiplierSymbol, p: float, q: float) -> float:
    """``sup_{y>0} y (sum_{|sigma| >= y} k^2)^(1/p - 1/q)``."""
    _check_pq(p, q)
    k = sigma.instance.hyperdims(sigma.level)
    return superlevel_functional(np.abs(sigma.values), k, 1 / p - 1 / q)


@dataclass
class NormEstimate:
    """Best feasible ``||Af||_q / ||f||_p`` found; a lower bound for the operator norm."""

    lower_bound: float
    coeffs: np.ndarray
    trials: int
    seed: int
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {"lower_bound": self.lower_bound, "trials": self.trials, "seed": self.seed,
                "trace": [float(t) for t in self.trace],
                "best_support": [int(i) for i in np.flatnonzero(np.abs(self.coeffs) > 1e-12)]}


def _ratios(sigma, C, p, q):
    inst = sigma.instance
    num = inst.lp_norms(C * sigma.values, q)
    den = inst.lp_norms(C, p)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = num / den
    return np.where(den > 0, r, -np.inf)


def _ascent(sigma, c, p, q, delta_hi=0.5, delta_lo=1e-4, factor=0.25, max_sweeps=50):
    """Best-move coordinate ascent over ``c_j -> c_j + {+-delta, +-i delta}``.

    Nodal values of ``f`` and ``Af`` are updated one coordinate at a time
    instead of re-synthesized for every candidate.
    """
    n = c.size
    X, w = sigma.instance.norm_sampler(n - 1)
    steps = np.tile(np.array([1, -1, 1j, -1j]), n)
    idx = np.repeat(np.arange(n), 4)
    rows_f = X[idx] * steps[:, None]
    rows_af = rows_f * sigma.values[idx][:, None]
    c = c / np.max(np.abs(c))
    u, v = c @ X, (sigma.values * c) @ X

    def ratio(uu, vv):
        den = nodal_lp(uu, w, p)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(den > 0, nodal_lp(vv, w, q) / den, -np.inf)

    best = float(ratio(u[None, :], v[None, :])[0])
    delta = delta_hi
    while delta >= delta_lo * (1 - 1e-12):
        for _ in range(max_sweeps):
            r = ratio(u + delta * rows_f, v + delta * rows_af)
            j = int(np.argmax(r))
            if not r[j] > best * (1 + 1e-14):
                break
            best = float(r[j])
            c = c.copy()
            c[idx[j]] += delta * steps[j]
            u, v = u + delta * rows_f[j], v + delta * rows_af[j]
            scale = np.max(np.abs(c))
            c, u, v = c / scale, u / scale, v / scale
        delta *= factor
    return best, c


def opnorm_lower_bound(sigma: MultiplierSymbol, p: float, q: float, trials: int = 4,
                       seed: int = 0) -> NormEstimate:
    """Lower bound for ``||A||_{L^p -> L^q}`` by search over character polynomials.

    All single characters are evaluated first (ties to the lowest label).
    Trial 0 ascends from the best spike; trials ``t >= 1`` start from random
    coefficients drawn with seed ``(seed, t)``.  ``trace[t]`` is the best
    ratio after trial ``t``, so more trials never lower the estimate.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = sigma.level + 1
    if not np.any(sigma.values):
        return NormEstimate(0.0, np.eye(n, dtype=complex)[0], trials, seed, [0.0] * trials)
    spikes = _ratios(sigma, np.eye(n, dtype=complex), p, q)
    j = int(np.argmax(spikes))
    best, best_c = float(spikes[j]), np.eye(n, dtype=complex)[j]
    trace = []
    for t in range(trials):
        if t == 0:
            start = best_c.copy()
        else:
            rng = np.random.default_rng([seed, t])
            u = rng.random((n, 2))
            start = np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
        r, c = _ascent(sigma, start, p, q)
        if r > best:
            best, best_c = float(r), c
        trace.append(best)
    return NormEstimate(best, best_c, trials, seed, trace)


def check_hormander_bound(sigma: MultiplierSymbol, p: float, q: float,
                          estimate: NormEstimate) -> dict:
    """Ratio of the estimate to the functional; at ``p = q = 2`` also checks sharpness."""
    bound = hormander_functional(sigma, p, q)
    ratio = estimate.lower_bound / bound if bound > 0 else (0.0 if estimate.lower_bound == 0
                                                            else math.inf)
    out = {"p": p, "q": q, "functional": bound, "lower_bound": estimate.lower_bound,
           "ratio": ratio, "finite": math.isfinite(ratio)}
    if p == 2 and q == 2:
        out["sharp"] = bool(abs(ratio - 1) <= SHARP_TOL) if bound > 0 else estimate.lower_bound == 0
    return out


def corollary_bounds(sigma: MultiplierSymbol, p: float, q: float,
                     estimate: NormEstimate | None = None) -> dict:
    """Functional with exponent ``1/p - 1/2`` (``p, q <= 2``) or ``1/q' - 1/2`` (``p, q >= 2``)."""
    if 1 < p <= 2 and 1 < q <= 2:
        exponent, case = 1 / p - 1 / 2, "p,q<=2"
    elif 2 <= p < math.inf and 2 <= q < math.inf:
        exponent, case = 1 / conjugate_exponent(q) - 1 / 2, "p,q>=2"
    else:
        raise ValueError("corollary covers 1 < p, q <= 2 or 2 <= p, q < inf")
    k = sigma.instance.hyperdims(sigma.level)
    bound = superlevel_functional(np.abs(sigma.values), k, exponent)
    out = {"p": p, "q": q, "case": case, "exponent": exponent, "bound": bound}
    if estimate is not None:
        out["lower_bound"] = estimate.lower_bound
        out["ratio"] = estimate.lower_bound / bound if bound > 0 else math.inf
    return out
