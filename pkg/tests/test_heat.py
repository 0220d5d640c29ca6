import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singtool.heat import (
    Spectral,
    TauSeries,
    deform,
    heat_residual,
    recenter,
    w_eval,
    w_ladder,
    w_mixed,
    w_partial,
)

taus = st.lists(st.floats(-2, 2), min_size=1, max_size=10)
pt2 = st.tuples(st.floats(-1, 1), st.floats(-1, 1))


@settings(max_examples=30)
@given(taus, st.integers(2, 4))
def test_tau_series_solves_hierarchy(t, n):
    grid = np.random.default_rng(0).uniform(-1, 1, size=(8, n))
    assert heat_residual(TauSeries(tuple(t), n), grid) <= 1e-10 * max(1.0, max(map(abs, t))) * 50


def test_spectral_solves_hierarchy():
    W = Spectral(((0.5, 1.0), (-0.7, 0.3), (1.2, -0.2)), 3)
    grid = np.random.default_rng(1).uniform(-1, 1, size=(10, 3))
    assert heat_residual(W, grid) <= 1e-10


def test_negative_control_detects_violation():
    from singtool.polynomial import SparsePoly

    u1, u2 = SparsePoly.variables(2)
    broken = TauSeries((0, 0, 1, 2, 3), 2).as_poly() + u1 * u2 / 1000
    grid = np.random.default_rng(2).uniform(-1, 1, size=(5, 2))
    assert heat_residual(broken, grid) > 1e-4
    with pytest.raises(TypeError):
        heat_residual("W", grid)


@settings(max_examples=30)
@given(taus, pt2, pt2)
def test_recenter(t, p, q):
    W = TauSeries(tuple(t), 2)
    R = recenter(W, p)
    a = R.shifted(0, q)[0]
    b = W.shifted(0, np.add(p, q))[0]
    assert abs(a - b) <= 1e-9 * max(1.0, abs(b), sum(abs(x) for x in t) * 50)


def test_mixed_partials_reduce_to_shifts():
    W = TauSeries((0.3, -1.0, 0.5, 2.0, 0.1, -0.4, 0.7), 2)
    p = (0.2, -0.3)
    # d_u^a d_v^b W = shift a + 2b
    assert w_mixed(W, (1, 1), p) == pytest.approx(w_partial(W, 3, p), rel=1e-14)
    assert w_mixed(W, (0, 2), p) == pytest.approx(w_partial(W, 4, p), rel=1e-14)
    lad = w_ladder(W, p, 6)
    assert lad[1] == pytest.approx(w_partial(W, 1, p))
    assert lad[6] == pytest.approx(w_partial(W, 6, p))
    with pytest.raises(IndexError):
        lad[0]
    # numeric check of W_v = W_uu
    h = 1e-4
    fd = (w_eval(W, (p[0], p[1] + h)) - w_eval(W, (p[0], p[1] - h))) / (2 * h)
    assert fd == pytest.approx(w_partial(W, 2, p), rel=1e-6)


def test_deform_agrees_on_slice():
    W = TauSeries((0, 1, 0.5, 0.2, 1.0), 2)
    D = deform(W, 4)
    assert D.nvars == 4
    assert D.shifted(0, [(0.3, 0.4, 0.0, 0.0)])[0] == pytest.approx(W.shifted(0, [(0.3, 0.4)])[0])
    with pytest.raises(ValueError):
        deform(W, 2)
