import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singtool.calculus import (
    CallableSmooth,
    PolySmooth,
    as_smooth,
    jet_coeff,
    jet_div,
    jet_mul,
)
from singtool.polynomial import SparsePoly

u, v = SparsePoly.variables(2)
F = u**3 * v - 2 * u * v**2 + v**4 / 3 + u


@settings(max_examples=20, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.integers(0, 3), st.integers(0, 3))
def test_finite_differences_track_exact_derivatives(a, b, i, j):
    exact = PolySmooth(F).deriv(i, j, (a, b))
    fd = CallableSmooth(lambda x, y: F((x, y))).deriv(i, j, (a, b))
    tol = {0: 1e-14, 1: 1e-8, 2: 1e-6, 3: 1e-4, 4: 1e-3}[min(i + j, 4)]
    assert abs(fd - exact) <= tol * max(1.0, abs(exact)) * 10


def test_taylor_of_exp():
    g = CallableSmooth(lambda x, y: math.exp(x + 2 * y))
    jet = g.taylor((0.0, 0.0), 2)
    assert jet_coeff(jet, 1, 1) == pytest.approx(2.0, rel=1e-5)
    assert jet_coeff(jet, 0, 2) == pytest.approx(4.0, rel=1e-5)


def test_jet_division():
    f = SparsePoly.constant(2, 1.0)
    g = 1.0 + u
    q = jet_div(f, g, 4)
    # 1 / (1 + u) = 1 - u + u^2 - ...
    assert [jet_coeff(q, k, 0) / math.factorial(k) for k in range(5)] == [1, -1, 1, -1, 1]
    assert jet_mul(q, g, 4).truncate(4) == SparsePoly.constant(2, 1.0)
    with pytest.raises(ZeroDivisionError):
        jet_div(f, u, 2)


def test_as_smooth_dispatch():
    assert isinstance(as_smooth(F), PolySmooth)
    assert isinstance(as_smooth(lambda a, b: a), CallableSmooth)
    assert as_smooth(2.0)((5, 5)) == 2.0
    with pytest.raises(TypeError):
        as_smooth("x")
