import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperf.core import CharacterPolynomial, lp_norm
from hyperf.dunkl_ramirez import (INF, DunklRamirez, EventuallyConstantFunction,
                                  GeometricTailMeasure, character_eval, dual_convolve,
                                  haar_weight, integrate_against, lp_norm_exact, lp_norm_power,
                                  parse_a, plancherel_weight, point_convolve,
                                  verify_measure_algebra)

THIRD = Fraction(1, 3)
labels = st.integers(0, 12)
points = st.one_of(st.integers(0, 12), st.just(INF))
rational_a = st.sampled_from([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 7)])


def test_parse_a():
    assert parse_a("1/3") == THIRD
    assert parse_a(THIRD) == THIRD
    assert parse_a(0.25) == 0.25
    for bad in ("3/4", 0, "0", "-1/3", "x"):
        with pytest.raises(ValueError):
            parse_a(bad)


def test_haar_weights():
    assert haar_weight(0, THIRD) == Fraction(2, 3)
    assert haar_weight(INF, THIRD) == 0
    assert sum(haar_weight(k, THIRD) for k in range(60)) + THIRD ** 60 == 1


def test_character_table():
    assert character_eval(0, 5, THIRD) == 1
    assert character_eval(1, 0, THIRD) == Fraction(-1, 2)
    assert character_eval(2, 0, THIRD) == 0
    assert character_eval(3, 2, THIRD) == Fraction(-1, 2)
    assert character_eval(3, INF, THIRD) == 1


def test_plancherel_weights():
    assert plancherel_weight(0, THIRD) == 1
    assert plancherel_weight(2, THIRD) == 6
    # series oracle: int |chi_1|^2 = (1/4)(2/3) + sum_{k>=1} 3^-k (2/3) = 1/2
    series = Fraction(1, 4) * Fraction(2, 3) + sum(
        Fraction(2, 3) * THIRD ** k for k in range(1, 80))
    assert series + THIRD ** 80 == Fraction(1, 2)  # closed-form geometric tail
    assert lp_norm_power(EventuallyConstantFunction.character(1, THIRD), 2, THIRD) == \
        Fraction(1, 2) == 1 / plancherel_weight(1, THIRD)


def test_point_convolution_examples():
    assert point_convolve(1, 3, THIRD) == point_convolve(3, 1, THIRD)
    d = point_convolve(1, 3, THIRD)
    assert d.total_mass() == 1 and d.weight(1) == 1 and d.weight(2) == 0
    assert point_convolve(4, INF, THIRD).weight(4) == 1
    self_conv = point_convolve(1, 1, THIRD)
    assert self_conv.weight(1) == Fraction(1, 2)
    for j in range(1, 10):
        assert self_conv.weight(1 + j) == THIRD ** j
    assert self_conv.total_mass() == 1


def test_integrate_against_examples():
    assert integrate_against(GeometricTailMeasure(THIRD, {3: Fraction(1)}, (), 0),
                             EventuallyConstantFunction.character(2, THIRD)) == 1
    mu = point_convolve(1, 1, THIRD)
    chi1 = EventuallyConstantFunction.character(1, THIRD)
    chi2 = EventuallyConstantFunction.character(2, THIRD)
    assert integrate_against(mu, chi1) == 1 == character_eval(1, 1, THIRD) ** 2
    # rational summation oracle: atom 1/2 at 1 where chi_2 = -1/2, tail 3^-j with chi_2 = 1
    oracle = Fraction(1, 2) * Fraction(-1, 2) + Fraction(1, 2)
    assert integrate_against(mu, chi2) == oracle == Fraction(1, 4) == character_eval(2, 1, THIRD) ** 2


def test_dual_convolution_examples():
    assert dual_convolve(1, 1, THIRD) == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert {k: v for k, v in dual_convolve(2, 5, THIRD).items() if v} == {5: 1}
    assert {k: v for k, v in dual_convolve(0, 0, THIRD).items() if v} == {0: 1}


def test_exact_lp_norms():
    a = THIRD
    one = EventuallyConstantFunction.constant(Fraction(1))
    for p in (1, 2, 3, 1.5, math.inf):
        assert lp_norm_exact(one, p, a) == pytest.approx(1.0)
    chi1 = EventuallyConstantFunction.character(1, a)
    assert lp_norm_exact(chi1, 2, a) == pytest.approx(math.sqrt(0.5), rel=1e-15)
    ind0 = EventuallyConstantFunction.indicator(0, a)
    assert lp_norm_exact(ind0, 1, a) == pytest.approx(2 / 3)


def test_float_path_matches_exact_path():
    inst = DunklRamirez(THIRD)
    rng = np.random.default_rng(4)
    c = rng.normal(size=7)
    f_float = CharacterPolynomial(inst, c)
    f_exact = EventuallyConstantFunction.constant(Fraction(0))
    for n, v in enumerate(c):
        f_exact = f_exact + EventuallyConstantFunction.character(n, THIRD) * Fraction(v)
    for p in (1, 2, 3, 1.5):
        assert lp_norm(inst, f_float, p) == pytest.approx(lp_norm_exact(f_exact, p, THIRD),
                                                           rel=1e-12)


@pytest.mark.parametrize("a", ["1/4", "1/3", "1/2"])
def test_measure_algebra_rational(a):
    verdicts = verify_measure_algebra(a, 12)
    assert all(verdicts.values()), verdicts


@given(a=rational_a, m=points, k=points, n=labels)
def test_multiplicativity_property(a, m, k, n):
    mu = point_convolve(m, k, a)
    assert mu.total_mass() == 1
    assert integrate_against(mu, EventuallyConstantFunction.character(n, a)) == \
        character_eval(n, m, a) * character_eval(n, k, a)


@given(a=rational_a, m=labels, n=labels, k=points)
def test_dual_table_property(a, m, n, k):
    table = dual_convolve(m, n, a)
    assert sum(table.values()) == 1
    assert all(v >= 0 for v in table.values())
    assert character_eval(m, k, a) * character_eval(n, k, a) == \
        sum(w * character_eval(j, k, a) for j, w in table.items())


@given(a=rational_a, m=points, k=points)
def test_commutativity_property(a, m, k):
    assert point_convolve(m, k, a) == point_convolve(k, m, a)


def test_instance_hyperdims_and_rule():
    inst = DunklRamirez(THIRD)
    k = inst.hyperdims(4)
    assert np.allclose(k, [1, 2, 6, 18, 54])
    rule = inst.integration_rule(6)
    assert rule.weights.sum() == pytest.approx(1.0, abs=1e-15)


def test_hl_condition_exact():
    inst = DunklRamirez(THIRD)
    assert inst.hl_condition_exact(3) == Fraction(7, 4)
    for a in (Fraction(1, 4), Fraction(1, 2), Fraction(2, 7)):
        assert DunklRamirez(a).hl_condition_exact(3) == 1 + a / (1 - a) ** 2
    # partial sums increase towards the limit; brute-force rational summation
    partial = 1 + sum((1 - THIRD) ** -1 * THIRD ** n for n in range(1, 30))
    assert inst.hl_condition_exact(3, 29) == partial < Fraction(7, 4)
    assert inst.hl_condition_limit(2) == math.inf


def test_hl_exponent_reproduces_printed():
    inst = DunklRamirez(THIRD)
    slope, icpt = inst.hl_exponent(3)
    assert (slope, icpt) == (Fraction(5, 2), -4)
    for p in (Fraction(5, 4), Fraction(3, 2), Fraction(2)):
        assert (2 - p / 2) + 3 * (p - 2) == p * (Fraction(5, 2) - 4 / p) == slope * p + icpt


def test_envelope_tail_matches_series():
    inst = DunklRamirez(THIRD)
    s, level = 5.0, 10
    direct = math.fsum(((2 / 3) * 3.0 ** n) ** -s for n in range(level + 1, 200))
    assert inst.envelope_tail(level, s) == pytest.approx(direct, rel=1e-12)
