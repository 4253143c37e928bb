import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from shortcut_lab.constants import (
    admissible_constants,
    check_rational_inequalities,
    k_disjoint,
    k_greedy,
    sweep_rational_inequalities,
)

F = Fraction
above_one = st.fractions(min_value=F(1001, 1000), max_value=100, max_denominator=1000).filter(lambda x: x > 1)


def test_base_values():
    c = admissible_constants(2, 2, 0)
    # 2*2*4 / (4*4 - 0 - 2) and 2*(36 - 6 - 4) / (56 + 12 - 20 + 2)
    assert (c.K_greedy, c.K_disjoint, c.K_max, c.M) == (F(8, 7), F(26, 25), F(26, 25), 0)


@settings(max_examples=200)
@given(above_one, above_one)
def test_closed_forms_match_sympy(N, L):
    assert k_greedy(N, L) == oracles.sympy_k_greedy(N, L)
    assert k_disjoint(L) == oracles.sympy_k_disjoint(L)


@settings(max_examples=100, deadline=None)
@given(above_one, above_one, st.sampled_from([F(1, 2), F(1), F(3)]), st.data())
def test_threshold_matches_sympy(N, L, R, data):
    kmax = admissible_constants(N, L).K_max
    u = data.draw(st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100))
    K = 1 + u * (kmax - 1)
    assert admissible_constants(N, L, R, K).M == oracles.sympy_m(N, L, R, K)


def test_threshold_spot_value():
    c = admissible_constants(2, 2, 1, F(51, 50))
    assert c.M == F(1836, 25)
    assert c.M == max(dict(c.thresholds).values())


def test_threshold_without_K_is_infinite():
    assert admissible_constants(2, 2, 1).M == math.inf


@pytest.mark.parametrize("args", [(1, 2), (2, 1), (2, 2, -1), (2, 2, 0, 1)])
def test_domain_errors(args):
    with pytest.raises(ValueError):
        admissible_constants(*args)


@given(above_one, above_one)
def test_inequalities_hold(L, N):
    assert all(check_rational_inequalities(L, N))


def test_sweep_is_seeded():
    a = sweep_rational_inequalities(200, seed=7)
    b = sweep_rational_inequalities(200, seed=7)
    assert a == b and a.ok
