"""Suite runners: each turns an :class:`ExperimentConfig` into sorted records
plus hard checks and warnings.

Hard checks are exact identities or bounds with a known constant.  Checks on
inequalities with an unspecified constant (``finite``) only raise warnings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import ExperimentConfig
from .conj_su2 import ConjSU2
from .core import gram_matrix
from .dunkl_ramirez import DunklRamirez, verify_measure_algebra
from .inequalities import (ANCHOR_TOL, TestFamily, check_truncation, conjugate_exponent,
                           hl_condition, hl_exponent_identity, verify_duality_bound,
                           verify_hardy_littlewood, verify_hausdorff_young, verify_hyp,
                           verify_paley)
from .multipliers import (MultiplierSymbol, check_hormander_bound, hormander_functional,
                          opnorm_lower_bound)
from .spectra import WeightFunction, distribution_function, mphi, paley_weight_sum

SOFT_CHECKS = frozenset({"finite"})
GRID_POINTS = 50
REL_SLACK = 1e-12


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class SuiteResult:
    name: str
    records: list = field(default_factory=list)
    hard_failures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    sup_ratio: float | None = None
    seconds: float | None = None

    @property
    def passed(self) -> bool:
        return not self.hard_failures

    def add(self, record: dict, checks: dict, label: str, soft=SOFT_CHECKS):
        record = dict(record)
        record["checks"] = {k: bool(v) for k, v in checks.items()}
        self.records.append(record)
        for k, ok in checks.items():
            if not ok:
                (self.warnings if k in soft else self.hard_failures).append(f"{label}: {k}")
        r = record.get("sup_ratio")
        if r is not None and (self.sup_ratio is None or r > self.sup_ratio):
            self.sup_ratio = r

    def to_dict(self, timings=False) -> dict:
        self.records.sort(key=lambda r: tuple(sorted((k, _key(v))
                                                     for k, v in r.get("params", {}).items())))
        out = {"records": self.records, "passed": self.passed,
               "hard_failures": sorted(self.hard_failures), "warnings": sorted(self.warnings),
               "sup_ratio": self.sup_ratio}
        if timings:
            out["seconds"] = self.seconds
        return out


def _key(v):
    return (0, float(v), "") if isinstance(v, (int, float)) else (1, 0.0, str(v))


def make_instance(cfg: ExperimentConfig):
    if cfg.instance == "conj_su2":
        return ConjSU2()
    return DunklRamirez(Fraction(cfg.a))


def make_family(cfg: ExperimentConfig) -> TestFamily:
    return TestFamily(cfg.family.kind, cfg.seed, cfg.family.count, cfg.level, cfg.family.decay)


def _ratio_record(report, per_function: bool) -> dict:
    d = report.to_dict()
    if not per_function:
        for key in ("lhs", "rhs", "ratio", "lhs_sch", "ratio_sch"):
            d.pop(key, None)
    d.pop("checks")
    return d


def _p_in(values, lo, hi, lo_open=True):
    return [p for p in values if (lo < p if lo_open else lo <= p) and p <= hi]


def run_hy(cfg, inst, fam) -> SuiteResult:
    res = SuiteResult("hy")
    for p in _p_in(cfg.p_values, 1, 2, lo_open=False):
        rep = verify_hausdorff_young(inst, fam, p)
        res.add(_ratio_record(rep, cfg.output.per_function), rep.checks, f"p={p!r}")
    # f = 1 is an extremal case at every p
    one = np.zeros((1, cfg.level + 1), dtype=complex)
    one[0, 0] = 1.0
    for p in _p_in(cfg.p_values, 1, 2, lo_open=False):
        rep = verify_hausdorff_young(inst, one, p)
        ok = bool(abs(rep.ratios[0] - 1) <= ANCHOR_TOL and abs(rep.extra["ratio_sch"][0] - 1)
                  <= ANCHOR_TOL)
        res.add({"params": {"p": p, "function": "one"}, "ratio": float(rep.ratios[0]),
                 "ratio_sch": float(rep.extra["ratio_sch"][0])},
                {"constant_equality": ok}, f"f=1 p={p!r}")
    return res


def paley_internals(inst, fam: TestFamily, phi: WeightFunction, n_functions=GRID_POINTS,
                    points=GRID_POINTS) -> tuple[dict, dict]:
    """Weight-sum lemma and weak (2,2) bound with their explicit constants 2 and 1."""
    m = mphi(phi)
    w_grid = np.geomspace(phi.values.min(), phi.values.max() * 2, points)
    lemma = [paley_weight_sum(phi, w) / (2 * m * w) for w in w_grid]
    C = fam.coefficients(inst)[:n_functions]
    k = inst.hyperdims(fam.level)
    fh = np.abs(C) / k
    weak = []
    for row in fh:
        af = row / (np.sqrt(k) * phi.values)
        pos = af[af > 0]
        if not pos.size:
            continue
        y_grid = np.geomspace(pos.min(), pos.max(), points)
        nu = distribution_function(af, phi, y_grid).masses
        norm2 = math.fsum(k * row ** 2)
        weak.append(float(np.max(y_grid ** 2 * nu) / norm2))
    lemma_max = float(max(lemma))
    weak_max = float(max(weak, default=0.0))
    record = {"params": {"check": "paley_internals"}, "M_phi": m,
              "weight_sum_max_ratio": lemma_max, "weak22_max_ratio": weak_max,
              "w_points": points, "y_points": points, "functions": len(weak)}
    checks = {"weight_sum_lemma": lemma_max <= 1 + REL_SLACK,
              "weak_2_2": weak_max <= 1 + REL_SLACK}
    return record, checks


def run_paley(cfg, inst, fam) -> SuiteResult:
    res = SuiteResult("paley")
    phi = WeightFunction.hl_preset(inst, cfg.level)
    for p in _p_in(cfg.p_values, 1, 2):
        rep = verify_paley(inst, fam, p, phi)
        res.add(_ratio_record(rep, cfg.output.per_function), rep.checks, f"p={p!r}")
    record, checks = paley_internals(inst, fam, phi)
    res.add(record, checks, "internals")
    return res


def hl_condition_record(inst, level) -> tuple[dict, dict]:
    cond = hl_condition(inst, inst.hl_beta, level)
    record = {"params": {"check": "hl_condition"}, **cond.to_dict()}
    checks = {"exponent_identity": hl_exponent_identity(inst, inst.hl_beta)}
    slope, icpt = inst.hl_exponent(inst.hl_beta)
    record["exponent"] = {"slope": fraction_str(slope), "intercept": fraction_str(icpt)}
    if isinstance(inst, ConjSU2):
        n = level + 1
        record["limit_pi2_over_6"] = math.pi ** 2 / 6
        checks["partial_sum_within_1_over_N"] = abs(cond.partial_sum - math.pi ** 2 / 6) <= 1 / n
    elif isinstance(inst.a, Fraction):
        a = inst.a
        derived = 1 + a / (1 - a) ** 2
        record["derived_closed_form"] = fraction_str(derived)
        checks["exact_closed_form"] = cond.exact == derived
        partial = inst.hl_condition_exact(inst.hl_beta, level)
        record["partial_exact"] = fraction_str(partial)
        checks["partial_below_limit"] = partial < derived
    return record, checks


def run_hl(cfg, inst, fam) -> SuiteResult:
    res = SuiteResult("hl")
    record, checks = hl_condition_record(inst, cfg.level)
    res.add(record, checks, "condition")
    for p in _p_in(cfg.p_values, 1, 2):
        rep = verify_hardy_littlewood(inst, fam, p)
        res.add(_ratio_record(rep, cfg.output.per_function), rep.checks, f"p={p!r}")
    return res


def run_hyp(cfg, inst, fam) -> SuiteResult:
    res = SuiteResult("hyp")
    phi = WeightFunction.hl_preset(inst, cfg.level)
    for p in _p_in(cfg.p_values, 1, 2):
        q = conjugate_exponent(p)
        bs = sorted({p, q, *[b for b in cfg.b_values if p <= b <= q]})
        for b in bs:
            rep = verify_hyp(inst, fam, p, b, phi)
            res.add(_ratio_record(rep, cfg.output.per_function), rep.checks, f"p={p!r} b={b!r}")
    return res


def run_duality(cfg, inst, fam) -> SuiteResult:
    res = SuiteResult("duality")
    for p in [q for q in cfg.q_values if 2 <= q < math.inf]:
        rep = verify_duality_bound(inst, fam, p)
        res.add(_ratio_record(rep, cfg.output.per_function), rep.checks, f"p={p!r}")
    return res


def run_multiplier(cfg, inst, fam) -> SuiteResult:
    res = SuiteResult("multiplier")
    level = cfg.multiplier.level
    pairs = [(2.0, 2.0)] + [(p, q) for p in _p_in(cfg.p_values, 1, 2) for q in cfg.q_values
                            if 2 <= q < math.inf and not (p == 2 and q == 2)]
    for i in range(cfg.multiplier.symbols):
        sigma = MultiplierSymbol.random(inst, level, cfg.seed, i)
        for p, q in pairs:
            trials = 1 if p == q == 2 else cfg.multiplier.trials
            est = opnorm_lower_bound(sigma, p, q, trials=trials, seed=cfg.seed)
            out = check_hormander_bound(sigma, p, q, est)
            checks = {"finite": out["finite"]}
            if p == q == 2:
                checks["sharp"] = out["sharp"]
                checks["functional_equals_sup"] = hormander_functional(sigma, 2, 2) == sigma.sup
            rec = {"params": {"symbol": i, "p": p, "q": q}, "level": level, "sup": sigma.sup,
                   "functional": out["functional"], "sup_ratio": out["ratio"],
                   "estimate": est.to_dict()}
            res.add(rec, checks, f"symbol={i} p={p!r} q={q!r}")
    return res


def run_algebra(cfg, inst, fam) -> SuiteResult:
    res = SuiteResult("algebra")
    if isinstance(inst, DunklRamirez):
        verdicts = verify_measure_algebra(inst.a, 12)
        res.add({"params": {"check": "measure_algebra"}, "a": inst.describe()["a"],
                 "max_index": 12, "mode": "rational" if isinstance(inst.a, Fraction) else "float"},
                verdicts, "measure_algebra")
        record, checks = hl_condition_record(inst, cfg.level)
        res.add(record, checks, "hl_condition")
        return res
    level = min(cfg.level, 20)
    G = gram_matrix(inst, level)
    target = np.diag(1.0 / inst.hyperdims(level))
    err = float(np.max(np.abs(G - target)))
    res.add({"params": {"check": "orthogonality"}, "level": level, "max_abs_error": err},
            {"orthogonality": err <= 1e-10}, "orthogonality")
    C = fam.coefficients(inst)
    k = inst.hyperdims(cfg.level)
    lhs = inst.lp_norms(C, 2.0) ** 2
    rhs = np.array([math.fsum(row) for row in k * np.abs(C / k) ** 2])
    defect = float(np.max(np.abs(lhs - rhs) / lhs))
    res.add({"params": {"check": "plancherel"}, "functions": len(C), "max_rel_defect": defect},
            {"plancherel": defect < 1e-10}, "plancherel")
    return res


RUNNERS = {"algebra": run_algebra, "duality": run_duality, "hl": run_hl, "hy": run_hy,
           "hyp": run_hyp, "multiplier": run_multiplier, "paley": run_paley}


def prepare(cfg: ExperimentConfig):
    """Instance and family for ``cfg``; raises ``TruncationOverflowError`` on bad levels."""
    inst = make_instance(cfg)
    check_truncation(inst, cfg.level, cfg.family.decay)
    if "multiplier" in cfg.suites:
        check_truncation(inst, cfg.multiplier.level, 0.0)
    return inst, make_family(cfg)
