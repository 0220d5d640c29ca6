"""Hot numeric kernels: batched ESP ladders and marching-squares cell tables.

Each kernel has a numba ``@njit`` implementation and a pure-numpy one. The
numba path is used unless ``SINGTOOL_DISABLE_NUMBA`` is set to a truthy value
or numba cannot be imported. Both paths are importable directly so tests and
``benchmarks/bench_kernels.py`` can compare them.
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("SINGTOOL_DISABLE_NUMBA", "").strip().lower()

try:  # pragma: no cover - depends on environment
    if _FLAG in ("1", "true", "yes", "on"):
        raise ImportError("numba disabled by SINGTOOL_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# ESP ladder: P_0..P_jmax at many points via j P_j = sum_l l u_l P_{j-l}


def esp_ladder_numpy(points: np.ndarray, jmax: int) -> np.ndarray:
    pts = np.ascontiguousarray(points, dtype=np.float64)
    m, n = pts.shape
    out = np.zeros((m, jmax + 1))
    out[:, 0] = 1.0
    for j in range(1, jmax + 1):
        acc = np.zeros(m)
        for l in range(1, min(j, n) + 1):
            acc += l * pts[:, l - 1] * out[:, j - l]
        out[:, j] = acc / j
    return out


def _esp_ladder_loops(points, jmax):
    m, n = points.shape
    out = np.zeros((m, jmax + 1))
    for i in range(m):
        out[i, 0] = 1.0
        for j in range(1, jmax + 1):
            acc = 0.0
            top = j if j < n else n
            for l in range(1, top + 1):
                acc += l * points[i, l - 1] * out[i, j - l]
            out[i, j] = acc / j
    return out


# ---------------------------------------------------------------------------
# the same recurrence in double-double arithmetic (Dekker/Knuth error-free
# transformations), for single values that sit on heavy cancellation. The
# helpers are plain arithmetic so they work on floats and on numpy arrays.


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = 134217729.0 * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    return _fast_two_sum(p, e + (ah * bl + al * bh))


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    return _fast_two_sum(s, e + (al + bl))


def _dd_div_d(ah, al, b):
    q1 = ah / b
    p, e = _two_prod(q1, b)
    s, f = _two_sum(ah, -p)
    q2 = (s + ((f - e) + al)) / b
    return _fast_two_sum(q1, q2)


def esp_ladder_dd_numpy(points: np.ndarray, jmax: int) -> np.ndarray:
    pts = np.ascontiguousarray(points, dtype=np.float64)
    m, n = pts.shape
    hi = np.zeros((m, jmax + 1))
    lo = np.zeros((m, jmax + 1))
    hi[:, 0] = 1.0
    for j in range(1, jmax + 1):
        sh, sl = np.zeros(m), np.zeros(m)
        for l in range(1, min(j, n) + 1):
            ch, cl = _two_prod(float(l), pts[:, l - 1])
            th, tl = _dd_mul(ch, cl, hi[:, j - l], lo[:, j - l])
            sh, sl = _dd_add(sh, sl, th, tl)
        hi[:, j], lo[:, j] = _dd_div_d(sh, sl, float(j))
    return hi + lo


def _esp_ladder_dd_loops(points, jmax, two_prod, dd_mul, dd_add, dd_div_d):
    m, n = points.shape
    out = np.zeros((m, jmax + 1))
    hi = np.zeros(jmax + 1)
    lo = np.zeros(jmax + 1)
    for i in range(m):
        hi[0] = 1.0
        lo[0] = 0.0
        for j in range(1, jmax + 1):
            sh = 0.0
            sl = 0.0
            top = j if j < n else n
            for l in range(1, top + 1):
                ch, cl = two_prod(float(l), points[i, l - 1])
                th, tl = dd_mul(ch, cl, hi[j - l], lo[j - l])
                sh, sl = dd_add(sh, sl, th, tl)
            hi[j], lo[j] = dd_div_d(sh, sl, float(j))
        for j in range(jmax + 1):
            out[i, j] = hi[j] + lo[j]
    return out


# ---------------------------------------------------------------------------
# marching squares
#
# Node (i, j) sits at row i (second coordinate), column j (first coordinate).
# Edge ids: 2*(i*nx + j) is the edge (i,j)-(i,j+1); 2*(i*nx + j)+1 is (i,j)-(i+1,j).
# Cell corner bits: 1 = (i,j), 2 = (i,j+1), 4 = (i+1,j+1), 8 = (i+1,j); a bit
# is set when the sampled value is >= 0.


# per-case edge pairs as indices into (bottom, right, top, left); -1 pads
_CASES = np.array(
    [
        [-1, -1, -1, -1],
        [3, 0, -1, -1],
        [0, 1, -1, -1],
        [3, 1, -1, -1],
        [1, 2, -1, -1],
        [3, 0, 1, 2],  # saddle; pairing flipped below when the centre is >= 0
        [0, 2, -1, -1],
        [3, 2, -1, -1],
        [3, 2, -1, -1],
        [0, 2, -1, -1],
        [3, 2, 0, 1],  # saddle
        [1, 2, -1, -1],
        [3, 1, -1, -1],
        [0, 1, -1, -1],
        [3, 0, -1, -1],
        [-1, -1, -1, -1],
    ],
    dtype=np.int64,
)


def marching_segments_numpy(values: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Segments as pairs of edge ids, one row per segment, in cell order."""
    vals = np.asarray(values, dtype=np.float64)
    ny, nx = vals.shape
    s = (vals >= 0).astype(np.int64)
    case = s[:-1, :-1] | (s[:-1, 1:] << 1) | (s[1:, 1:] << 2) | (s[1:, :-1] << 3)
    ii, jj = np.meshgrid(np.arange(ny - 1), np.arange(nx - 1), indexing="ij")
    bottom = 2 * (ii * nx + jj)
    right = 2 * (ii * nx + jj + 1) + 1
    top = 2 * ((ii + 1) * nx + jj)
    left = 2 * (ii * nx + jj) + 1
    edges = np.stack([bottom, right, top, left], axis=-1)
    table = _CASES[case].copy()
    # table entries isolate the positive corners; a centre >= 0 joins them
    c_pos = np.asarray(centers) >= 0
    flip5 = (case == 5) & c_pos
    flip10 = (case == 10) & c_pos
    table[flip5] = [3, 2, 0, 1]
    table[flip10] = [3, 0, 1, 2]
    out = []
    for slot in (0, 2):
        a = table[..., slot]
        b = table[..., slot + 1]
        mask = a >= 0
        ea = np.take_along_axis(edges, np.where(mask, a, 0)[..., None], axis=-1)[..., 0]
        eb = np.take_along_axis(edges, np.where(mask, b, 0)[..., None], axis=-1)[..., 0]
        order = (ii * (nx - 1) + jj) * 2 + slot // 2
        out.append(np.stack([order[mask], ea[mask], eb[mask]], axis=-1))
    segs = np.concatenate(out, axis=0)
    segs = segs[np.argsort(segs[:, 0], kind="stable")]
    return segs[:, 1:].copy()


def _marching_loops(values, centers, cases):
    ny, nx = values.shape
    out = np.empty((2 * (ny - 1) * (nx - 1), 2), dtype=np.int64)
    count = 0
    for i in range(ny - 1):
        for j in range(nx - 1):
            c = 0
            if values[i, j] >= 0:
                c |= 1
            if values[i, j + 1] >= 0:
                c |= 2
            if values[i + 1, j + 1] >= 0:
                c |= 4
            if values[i + 1, j] >= 0:
                c |= 8
            if c == 0 or c == 15:
                continue
            e0 = 2 * (i * nx + j)
            e1 = 2 * (i * nx + j + 1) + 1
            e2 = 2 * ((i + 1) * nx + j)
            e3 = 2 * (i * nx + j) + 1
            edges = (e0, e1, e2, e3)
            a0 = cases[c, 0]
            a1 = cases[c, 1]
            b0 = cases[c, 2]
            b1 = cases[c, 3]
            if c == 5 and centers[i, j] >= 0:
                a0, a1, b0, b1 = 3, 2, 0, 1
            elif c == 10 and centers[i, j] >= 0:
                a0, a1, b0, b1 = 3, 0, 1, 2
            out[count, 0] = edges[a0]
            out[count, 1] = edges[a1]
            count += 1
            if b0 >= 0:
                out[count, 0] = edges[b0]
                out[count, 1] = edges[b1]
                count += 1
    return out[:count]


if HAVE_NUMBA:
    _esp_ladder_jit = njit(cache=True)(_esp_ladder_loops)
    _marching_jit = njit(cache=True)(_marching_loops)

    def esp_ladder_numba(points: np.ndarray, jmax: int) -> np.ndarray:
        return _esp_ladder_jit(np.ascontiguousarray(points, dtype=np.float64), int(jmax))

    def marching_segments_numba(values: np.ndarray, centers: np.ndarray) -> np.ndarray:
        return _marching_jit(
            np.ascontiguousarray(values, dtype=np.float64),
            np.ascontiguousarray(centers, dtype=np.float64),
            _CASES,
        )

    _jit = njit(cache=True)
    _two_sum_j = _jit(_two_sum)
    _fast_two_sum_j = _jit(_fast_two_sum)
    _split_j = _jit(_split)

    @_jit
    def _two_prod_j(a, b):
        p = a * b
        ah, al = _split_j(a)
        bh, bl = _split_j(b)
        return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl

    @_jit
    def _dd_mul_j(ah, al, bh, bl):
        p, e = _two_prod_j(ah, bh)
        return _fast_two_sum_j(p, e + (ah * bl + al * bh))

    @_jit
    def _dd_add_j(ah, al, bh, bl):
        s, e = _two_sum_j(ah, bh)
        return _fast_two_sum_j(s, e + (al + bl))

    @_jit
    def _dd_div_d_j(ah, al, b):
        q1 = ah / b
        p, e = _two_prod_j(q1, b)
        s, f = _two_sum_j(ah, -p)
        q2 = (s + ((f - e) + al)) / b
        return _fast_two_sum_j(q1, q2)

    _esp_dd_jit = _jit(_esp_ladder_dd_loops)

    def esp_ladder_dd_numba(points: np.ndarray, jmax: int) -> np.ndarray:
        return _esp_dd_jit(np.ascontiguousarray(points, dtype=np.float64), int(jmax),
                           _two_prod_j, _dd_mul_j, _dd_add_j, _dd_div_d_j)

    esp_ladder = esp_ladder_numba
    esp_ladder_dd = esp_ladder_dd_numba
    marching_segments = marching_segments_numba
else:  # pragma: no cover
    esp_ladder_numba = esp_ladder_dd_numba = marching_segments_numba = None
    esp_ladder = esp_ladder_numpy
    esp_ladder_dd = esp_ladder_dd_numpy
    marching_segments = marching_segments_numpy
