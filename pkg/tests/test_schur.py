from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import esp_series_oracle, esp_two_var_closed
from singtool.errors import DomainError
from singtool.schur import (
    esp_eval,
    esp_eval_hermite,
    esp_ladder,
    esp_poly,
    exact_parabola_coeffs,
    factor_esp,
    hermite_eval,
    hermite_roots,
)

small = st.fractions(min_value=-2, max_value=2, max_denominator=9)


@settings(max_examples=40)
@given(st.lists(small, min_size=1, max_size=4), st.integers(0, 12))
def test_exact_poly_matches_series_oracle(point, j):
    assert esp_poly(j, len(point)).evaluate(point) == esp_series_oracle(point, j)[j]


@given(st.integers(0, 10), st.integers(1, 4), st.integers(1, 4))
def test_derivative_shift(j, n, l):
    if l > n:
        return
    assert esp_poly(j, n).diff(l - 1) == esp_poly(j - l, n)


@settings(max_examples=25)
@given(st.tuples(small, small), st.tuples(small, small), st.integers(0, 8))
def test_addition_formula(a, b, j):
    # P_j(a + b) = sum_m P_{j-m}(a) P_m(b)
    s = (a[0] + b[0], a[1] + b[1])
    lhs = esp_poly(j, 2).evaluate(s)
    rhs = sum(esp_poly(j - m, 2).evaluate(a) * esp_poly(m, 2).evaluate(b) for m in range(j + 1))
    assert lhs == rhs


@given(st.integers(0, 12), small, small)
def test_two_variable_closed_form(j, u, v):
    assert esp_poly(j, 2).evaluate((u, v)) == esp_two_var_closed(j, u, v)


def test_ladder_and_eval_agree():
    pts = np.random.default_rng(1).uniform(-1, 1, size=(30, 3))
    lad = esp_ladder(pts, 15)
    for i, x in enumerate(pts[:5]):
        for j in range(16):
            assert abs(lad[i, j] - esp_eval(j, x)) <= 1e-13 * max(1.0, abs(lad[i, j]))
    assert esp_eval(-1, pts[0]) == 0.0
    assert esp_ladder(pts, -1).shape == (30, 0)


def test_hermite_roots_are_roots():
    for j in range(1, 15):
        r = hermite_roots(j).roots
        assert len(r) == j and all(np.diff(r) > 0)
        ref = np.polynomial.hermite.hermroots([0] * j + [1])
        assert np.allclose(r, np.sort(ref), atol=1e-9)
        for a in r:
            assert abs(hermite_eval(j, a)) <= 1e-8 * 2**j * factorial(j) ** 0.5


def test_factor_values_and_snapping():
    assert factor_esp(2).parabola_coeffs == (2.0,)
    assert factor_esp(3).parabola_coeffs == (6.0,)
    assert exact_parabola_coeffs(2) == (Fraction(2),)
    f4 = factor_esp(4)
    assert not f4.linear_factor and len(f4.parabola_coeffs) == 2
    with pytest.raises(ValueError):
        factor_esp(0)


@settings(max_examples=30)
@given(st.integers(1, 10), st.floats(-2, 2), st.floats(-2, -0.01))
def test_hermite_route_matches_recurrence(j, u, v):
    direct = esp_eval_hermite(j, u, v)
    ref = esp_eval(j, (u, v))
    assert abs(direct - ref) <= 1e-10 * max(1.0, abs(ref))


def test_hermite_route_domain():
    with pytest.raises(DomainError):
        esp_eval_hermite(3, 0.5, 0.2, fallback=False)
    assert abs(esp_eval_hermite(3, 0.5, 0.2) - esp_eval(3, (0.5, 0.2))) <= 1e-14
    assert esp_eval_hermite(0, 1.0, 1.0) == 1.0


def test_compensated_eval_on_cancellation():
    # P_2(u, v) = u^2/2 + v cancels completely on v = -u^2/2
    u = 1.0 + 2**-30
    v = -(u * u) / 2
    exact = esp_poly(2, 2).evaluate((u, v))
    assert esp_eval(2, (u, v)) == float(exact)
