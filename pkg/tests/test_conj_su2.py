import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from hyperf.conj_su2 import (ConjSU2, QuantumIndex, character_eval, default_rule,
                             gauss_legendre_rule, haar_integrate, hl_weight, midpoint_rule,
                             paley_weight)
from hyperf.core import gram_matrix


def weight_sum_character(m, t):
    """Normalized SU(2) character as an average of weights exp(i (m - 2j) pi t)."""
    j = np.arange(m + 1)
    return np.real(np.exp(1j * np.pi * np.multiply.outer(t, m - 2 * j)).mean(axis=-1))


def test_quantum_index():
    q = QuantumIndex(3)
    assert q.l == Fraction(3, 2)
    assert q.hyperdim == 16
    with pytest.raises(ValueError):
        QuantumIndex(-1)


def test_character_examples():
    assert character_eval(0, 0.37) == 1.0
    assert character_eval(1, 0.5) == pytest.approx(0.0, abs=1e-16)
    for m in range(10):
        assert character_eval(m, 0.0) == 1.0
        assert character_eval(m, 1e-12) == 1.0
        assert character_eval(m, 1.0) == (-1) ** m


@pytest.mark.parametrize("m", range(12))
def test_character_matches_weight_sum(m):
    t = np.linspace(0, 1, 257)
    assert np.max(np.abs(character_eval(m, t) - weight_sum_character(m, t))) < 1e-12


def test_character_continuous_near_singularities():
    for m in range(1, 8):
        for t0 in (0.0, 1.0):
            t = t0 + np.array([-1, 1]) * 2e-8
            t = t[(t >= 0) & (t <= 1)]
            assert np.allclose(character_eval(m, t), character_eval(m, t0), atol=1e-10)


@given(m=st.integers(0, 60), t=st.floats(0, 1))
def test_characters_bounded_by_one(m, t):
    assert abs(character_eval(m, t)) <= 1 + 1e-12


def test_haar_total_mass():
    assert haar_integrate(lambda t: np.ones_like(t)).real == pytest.approx(1.0, abs=1e-14)
    assert quad(lambda t: 2 * math.sin(math.pi * t) ** 2, 0, 1)[0] == pytest.approx(1.0)


@pytest.mark.parametrize("m,mp", [(0, 0), (1, 1), (2, 5), (3, 3), (7, 4), (9, 9)])
def test_haar_pairing_closed_form(m, mp):
    # 2 int sin((m+1) pi t) sin((m'+1) pi t) dt / ((m+1)(m'+1)) = delta / (m+1)^2
    expected = (1.0 / (m + 1) ** 2) if m == mp else 0.0
    f = lambda t: character_eval(m, t) * character_eval(mp, t)
    assert haar_integrate(f, default_rule(m + mp)).real == pytest.approx(expected, abs=1e-14)
    adaptive = quad(lambda t: 2 * math.sin((m + 1) * math.pi * t)
                    * math.sin((mp + 1) * math.pi * t), 0, 1, limit=200)[0]
    assert adaptive / ((m + 1) * (mp + 1)) == pytest.approx(expected, abs=1e-12)


def test_chi1_squared():
    f = lambda t: character_eval(1, t) ** 2
    assert haar_integrate(f, default_rule(2)).real == pytest.approx(0.25, abs=1e-15)


def test_gram_at_level_20():
    inst = ConjSU2()
    G = gram_matrix(inst, 20)
    assert np.max(np.abs(G - np.diag(1 / (np.arange(1, 22) ** 2)))) < 1e-10


def test_midpoint_and_gauss_legendre_agree():
    f = lambda t: character_eval(6, t) * character_eval(4, t) + character_eval(3, t)
    a = haar_integrate(f, midpoint_rule(64))
    b = haar_integrate(f, gauss_legendre_rule(40))
    assert a == pytest.approx(b, abs=1e-14)


def test_midpoint_exact_degree_is_honest():
    # the rule claims exactness up to 2n - 3: integrate chi_m^2 at the limit
    n = 10
    rule = midpoint_rule(n)
    m = rule.exact_degree // 2
    val = rule.integrate(character_eval(m, rule.nodes) ** 2)
    assert val == pytest.approx(1 / (m + 1) ** 2, abs=1e-14)


def test_hl_weight_and_paley_weight():
    assert hl_weight(0) == 1
    assert hl_weight(2) == 9
    assert paley_weight(0) == 1.0
    assert paley_weight(2) == pytest.approx(3.0 ** -6)


def test_hl_condition_partial_sums():
    inst = ConjSU2()
    for level in (10, 40, 200):
        terms = inst.hl_condition_terms(level, 3)
        direct = math.fsum(1 / n ** 2 for n in range(1, level + 2))
        assert math.fsum(terms) == pytest.approx(direct, rel=1e-14)
        assert abs(direct - math.pi ** 2 / 6) <= 1 / (level + 1)
    assert inst.hl_condition_limit(3) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    assert inst.hl_condition_limit(2.5) == math.inf


def test_hl_exponent_reproduces_printed():
    inst = ConjSU2()
    slope, icpt = inst.hl_exponent(3)
    assert (slope, icpt) == (5, -8)
    # independent check on a few rational p: (2l+1)^(2(2 - p/2) + 2*3*(p - 2))
    for p in (Fraction(5, 4), Fraction(3, 2), Fraction(2)):
        assert 2 * (2 - p / 2) + 6 * (p - 2) == slope * p + icpt


def test_envelope_tail_bounds_direct_sum():
    inst = ConjSU2()
    for level, s in [(10, 2.5), (40, 4.5), (5, 1.0)]:
        direct = math.fsum(n ** (-2.0 * s) for n in range(level + 2, 200000))
        assert direct <= inst.envelope_tail(level, s)
