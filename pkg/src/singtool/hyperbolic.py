"""Hodograph maps of strictly hyperbolic 2x2 systems in Riemann invariants.

    r_t = R(r, s) r_x,   s_t = S(r, s) s_x
    x_r = -S t_r,        x_s = -R t_s,      (S - R) t_rs = R_r t_s - S_s t_r

Models are sympy expressions in the symbols ``r`` and ``s``; numeric values
come from ``lambdify``. Here Whitney's criteria work as stated: on
``t_r = 0`` the field ``-t_rs d_r + t_rr d_s`` grades singularities by the
number of vanishing r-derivatives of t.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy as sp

from .errors import (
    Degenerate,
    DomainError,
    NotOnCurve,
    NotWeaklyNonlinear,
    PathInconsistent,
    TransitionLine,
)

r, s = sp.symbols("r s", real=True)

TRANSITION_TOL = 1e-10
CURVE_TOL = 1e-8
NONZERO_TOL = 1e-6
PANELS = 512
GAUSS_NODES = 4


def _expr(value):
    if isinstance(value, sp.Basic):
        return value
    return sp.sympify(value, locals={"r": r, "s": s})


def _numeric(expr):
    f = sp.lambdify((r, s), expr, "numpy")

    def call(rr, ss):
        rr, ss = np.broadcast_arrays(np.asarray(rr, dtype=float), np.asarray(ss, dtype=float))
        return np.broadcast_to(np.asarray(f(rr, ss), dtype=float), rr.shape).copy()

    return call


class HyperbolicModel:
    """Characteristic speeds ``R, S`` and a time function ``t`` of ``(r, s)``."""

    def __init__(self, R, S, t):
        self.R, self.S, self.t = _expr(R), _expr(S), _expr(t)
        extra = (self.R.free_symbols | self.S.free_symbols | self.t.free_symbols) - {r, s}
        if extra:
            raise ValueError(f"unknown symbols {sorted(map(str, extra))}")
        self._fns = {}

    def fn(self, expr):
        key = sp.srepr(expr)
        if key not in self._fns:
            self._fns[key] = _numeric(expr)
        return self._fns[key]

    def value(self, expr, point) -> float:
        return float(self.fn(expr)(point[0], point[1]))

    def t_d(self, a: int, b: int):
        return sp.diff(self.t, r, a, s, b) if a or b else self.t

    @cached_property
    def residual_expr(self):
        return (self.S - self.R) * sp.diff(self.t, r, s) - sp.diff(self.R, r) * sp.diff(
            self.t, s
        ) + sp.diff(self.S, s) * sp.diff(self.t, r)

    def gap(self, point) -> float:
        return self.value(self.S - self.R, point)

    def check_hyperbolic(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        gap = self.fn(self.S - self.R)(pts[:, 0], pts[:, 1])
        bad = np.abs(gap) < TRANSITION_TOL
        if np.any(bad):
            p = pts[np.argmax(bad)]
            raise TransitionLine(f"S = R at {tuple(p)}")


def hyp_residual(model: HyperbolicModel, grid) -> float:
    pts = np.atleast_2d(np.asarray(grid, dtype=float))
    model.check_hyperbolic(pts)
    vals = model.fn(model.residual_expr)(pts[:, 0], pts[:, 1])
    return float(np.max(np.abs(vals)))


def hyp_jacobian(model: HyperbolicModel, point) -> float:
    tr = model.value(model.t_d(1, 0), point)
    ts = model.value(model.t_d(0, 1), point)
    return model.gap(point) * tr * ts


# ---------------------------------------------------------------------------
# x by path integration of (x_r, x_s) = (-S t_r, -R t_s)


def _leg(fn, fixed_is_r, fixed, a, b, panels):
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_NODES)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    var = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    other = np.full_like(var, fixed)
    vals = fn(other, var) if fixed_is_r else fn(var, other)
    return float(np.dot(w, vals)), (np.column_stack([other, var]) if fixed_is_r
                                    else np.column_stack([var, other]))


def hyp_x_paths(model: HyperbolicModel, base, target, panels: int = PANELS):
    """``x(target) - x(base)`` along the two axis-parallel L-paths."""
    xr = model.fn(-model.S * model.t_d(1, 0))
    xs = model.fn(-model.R * model.t_d(0, 1))
    (r0, s0), (r1, s1) = base, target
    # r first, then s
    a1, pa1 = _leg(xr, False, s0, r0, r1, panels)
    a2, pa2 = _leg(xs, True, r1, s0, s1, panels)
    # s first, then r
    b1, pb1 = _leg(xs, True, r0, s0, s1, panels)
    b2, pb2 = _leg(xr, False, s1, r0, r1, panels)
    model.check_hyperbolic(np.vstack([pa1, pa2, pb1, pb2]))
    return a1 + a2, b1 + b2


def hyp_x_from_t(model: HyperbolicModel, base, target, x0: float = 0.0,
                 panels: int = PANELS) -> float:
    xa, xb = hyp_x_paths(model, base, target, panels)
    if abs(xa - xb) > 1e-6:
        raise PathInconsistent(
            f"L-paths disagree by {abs(xa - xb):.3e}; t violates the compatibility equation"
        )
    return x0 + 0.5 * (xa + xb)


# ---------------------------------------------------------------------------
# classification on t_r = 0 (or t_s = 0)


@dataclass(frozen=True)
class HypSingularityVerdict:
    point: tuple
    kind: str  # fold | cusp | order_n | transition_line | degenerate
    order: int
    variable: str  # "r", or "s" for the mirrored case
    witness: dict = field(default_factory=dict)


def _curve_variable(model, point, tol):
    tr = model.value(model.t_d(1, 0), point)
    ts = model.value(model.t_d(0, 1), point)
    scale = max(1.0, abs(tr), abs(ts))
    zr, zs = abs(tr) <= tol * scale, abs(ts) <= tol * scale
    if zr and zs:
        raise Degenerate(f"t_r and t_s both vanish at {tuple(point)}")
    if zr:
        return "r", tr, ts
    if zs:
        return "s", tr, ts
    raise NotOnCurve(f"neither t_r ({tr:.3e}) nor t_s ({ts:.3e}) vanishes at {tuple(point)}")


def hyp_classify(model: HyperbolicModel, point, tol: float = CURVE_TOL,
                 nmax: int = 8) -> HypSingularityVerdict:
    point = tuple(float(c) for c in point)
    if abs(model.gap(point)) < TRANSITION_TOL:
        return HypSingularityVerdict(point, "transition_line", 0, "", {"S-R": model.gap(point)})
    var, tr, ts = _curve_variable(model, point, tol)
    sym = r if var == "r" else s
    ladder = [model.value(sp.diff(model.t, sym, j), point) for j in range(1, nmax + 2)]
    scale = max(1.0, abs(ts), abs(tr), max(abs(a) for a in ladder))
    witness = {"t_r": tr, "t_s": ts, "ladder": tuple(ladder)}
    for n in range(1, nmax + 1):
        a = ladder[n]  # d^{n+1} t
        if abs(a) > NONZERO_TOL * scale:
            kind = {1: "fold", 2: "cusp"}.get(n, "order_n")
            return HypSingularityVerdict(point, kind, n, var, witness)
        if abs(a) > tol * scale:
            raise Degenerate(f"d^{n + 1}t = {a:.3e} is neither zero nor clearly nonzero")
    raise Degenerate(f"t is flat in {var} up to order {nmax + 1}")


def _field_ladder(model, curve, m, point):
    """``nabla_V^k (t, x)`` for k = 1..m with ``V = (-curve_s, curve_r)``."""
    vr, vs = -sp.diff(curve, s), sp.diff(curve, r)

    def apply(g):
        return vr * sp.diff(g, r) + vs * sp.diff(g, s)

    tr, ts = model.t_d(1, 0), model.t_d(0, 1)
    cur_t = vr * tr + vs * ts
    cur_x = vr * (-model.S * tr) + vs * (-model.R * ts)
    out = []
    for k in range(m):
        out.append((model.value(cur_t, point), model.value(cur_x, point)))
        if k + 1 < m:
            cur_t, cur_x = apply(cur_t), apply(cur_x)
    return np.array(out), (model.value(vr, point), model.value(vs, point))


def hyp_whitney_ladder(model: HyperbolicModel, point, n: int, tol: float = CURVE_TOL):
    """Rows ``nabla_V^k (t, x)`` for ``k = 1..n`` on the singular curve."""
    if n < 1:
        raise ValueError("n must be >= 1")
    point = tuple(float(c) for c in point)
    model.check_hyperbolic([point])
    var, _, _ = _curve_variable(model, point, tol)
    curve = model.t_d(1, 0) if var == "r" else model.t_d(0, 1)
    ladder, _ = _field_ladder(model, curve, n, point)
    return ladder


def first_nonvanishing(ladder, scale: float = 1.0) -> int:
    for k, row in enumerate(ladder, start=1):
        if np.linalg.norm(row) > NONZERO_TOL * scale:
            return k
    return 0


def hyp_whitney_closed_form(model: HyperbolicModel, point, n: int) -> np.ndarray:
    """``(R_r t_s/(R-S))^{n-1} t_s d^{n+1}_r t (1, -R)`` at an order-n point.

    The first factor is the r-component of the field on ``t_r = 0``.
    """
    R = model.value(model.R, point)
    Rr = model.value(sp.diff(model.R, r), point)
    ts = model.value(model.t_d(0, 1), point)
    dn = model.value(model.t_d(n + 1, 0), point)
    vr = Rr * ts / (R - model.value(model.S, point))
    return vr ** (n - 1) * ts * dn * np.array([1.0, -R])


def direction_error(vec, R: float) -> float:
    """Sine of the angle between ``vec`` and ``(1, -R)``."""
    d = np.array([1.0, -R])
    return float(abs(vec[0] * d[1] - vec[1] * d[0]) / (np.linalg.norm(vec) * np.linalg.norm(d)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeaklyNonlinearReport:
    r0: float
    s_samples: tuple
    ladders: np.ndarray  # (samples, kmax, 2) from iterated field application
    closed: np.ndarray  # same shape, a_rr^k d_s^{k-1}(b_s (1, -R))
    max_error: float

    @property
    def ok(self) -> bool:
        return self.max_error <= 1e-6


def weakly_nonlinear_probe(a, b, R, S, r0=None, s_samples=None, kmax: int = 3):
    """Check the factorized field on ``a_r = 0`` for ``t = a(r) + b(s)``."""
    a, b, R, S = map(_expr, (a, b, R, S))
    if sp.simplify(sp.diff(R, r)) != 0 or sp.simplify(sp.diff(S, s)) != 0:
        raise NotWeaklyNonlinear("need R_r = S_s = 0")
    if r0 is None:
        roots = sorted(float(x) for x in sp.solve(sp.diff(a, r), r) if x.is_real)
        if not roots:
            raise DomainError("a_r has no real zero")
        r0 = roots[0]
    if s_samples is None:
        s_samples = np.linspace(-1.0, 1.0, 5)
    model = HyperbolicModel(R, S, a + b)
    curve = model.t_d(1, 0)
    arr = sp.diff(a, r, 2)
    ladders, closed = [], []
    err = 0.0
    for sv in s_samples:
        p = (float(r0), float(sv))
        lad, _ = _field_ladder(model, curve, kmax, p)
        ref = []
        for k in range(1, kmax + 1):
            g = sp.diff(b, s, k)
            h = sp.diff(-R * sp.diff(b, s), s, k - 1)
            c = model.value(arr, p) ** k
            ref.append((c * model.value(g, p), c * model.value(h, p)))
        ref = np.array(ref)
        err = max(err, float(np.max(np.abs(lad - ref) / np.maximum(1.0, np.abs(ref)))))
        ladders.append(lad)
        closed.append(ref)
    return WeaklyNonlinearReport(float(r0), tuple(float(v) for v in s_samples),
                                 np.array(ladders), np.array(closed), err)


def manufactured_model(n: int, c=1, sigma=3, kappa=sp.Rational(1, 2)) -> HyperbolicModel:
    """``t = r^{n+1} + s + c r s`` with ``S = sigma``, ``R = sigma + kappa/t_s``.

    Then ``(S - R) t_s = -kappa`` is constant in r, which is exactly the
    compatibility equation, and ``R_r != 0`` at the origin so the Whitney
    field does not degenerate on ``t_r = 0``.
    """
    t = r ** (n + 1) + s + c * r * s
    return HyperbolicModel(sigma + kappa / sp.diff(t, s), sp.Integer(sigma), t)
