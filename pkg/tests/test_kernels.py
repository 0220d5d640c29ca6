import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from singtool import kernels

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")


@needs_numba
@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 20), st.integers(1, 6)),
              elements=st.floats(-2, 2)), st.integers(0, 25))
def test_esp_ladder_backends_agree(pts, jmax):
    a = kernels.esp_ladder_numpy(pts, jmax)
    b = kernels.esp_ladder_numba(pts, jmax)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)
    c = kernels.esp_ladder_dd_numpy(pts, jmax)
    d = kernels.esp_ladder_dd_numba(pts, jmax)
    assert np.array_equal(c, d)


@needs_numba
@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(2, 12), st.integers(2, 12)),
              elements=st.floats(-1, 1)))
def test_marching_backends_agree(vals):
    centers = 0.25 * (vals[:-1, :-1] + vals[1:, :-1] + vals[:-1, 1:] + vals[1:, 1:])
    a = kernels.marching_segments_numpy(vals, centers)
    b = kernels.marching_segments_numba(vals, centers)
    assert np.array_equal(a, b)


def test_marching_single_cell():
    vals = np.array([[1.0, -1.0], [-1.0, -1.0]])
    segs = kernels.marching_segments_numpy(vals, np.array([[-0.5]]))
    # bottom edge id 0, left edge id 1
    assert sorted(segs[0]) == [0, 1]


def test_env_flag_selects_numpy():
    env = dict(os.environ, SINGTOOL_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from singtool import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_fallback_backend_gives_same_results():
    code = (
        "import numpy as np; from singtool.schur import esp_eval, esp_ladder;"
        "x = np.linspace(-1, 1, 12).reshape(4, 3);"
        "print(repr(esp_ladder(x, 10).tolist())); print(repr(esp_eval(9, x[1])))"
    )
    env = dict(os.environ, SINGTOOL_DISABLE_NUMBA="1")
    slow = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                          text=True, check=True).stdout.splitlines()
    x = np.linspace(-1, 1, 12).reshape(4, 3)
    from singtool.schur import esp_eval, esp_ladder
    assert np.allclose(eval(slow[0]), esp_ladder(x, 10), rtol=1e-13, atol=1e-15)
    assert float(slow[1]) == esp_eval(9, x[1])
