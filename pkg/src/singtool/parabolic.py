"""Hodograph plane-into-plane mappings of parabolic systems.

Jordan case (lambda = u):  t = W_v,  x = W_u - u W_v,  with W_v = W_uu.
General lambda:            t = w_u / lam_u,  x = w - lam w_u / lam_u.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import DerivSmooth, Smooth2, as_smooth, jet_coeff, jet_div
from .contour import ZeroSetTrace, trace_zero_set
from .errors import DegenerateLambda, DegenerateTangent, NotOnCurve, SingularPoint
from .heat import TauSeries, WSolution, w_partial
from .polynomial import SparsePoly

SINGULAR_THRESHOLD = 1e-12
ON_CURVE_TOL = 1e-8
TANGENT_TOL = 1e-10


class PlaneMap:
    """A map ``(u, v) -> (t, x)`` with partial-derivative access."""

    def __init__(self, t, x):
        self.t: Smooth2 = as_smooth(t)
        self.x: Smooth2 = as_smooth(x)

    def __call__(self, p):
        return self.t(p), self.x(p)

    def jacobian(self, p) -> float:
        t_u, t_v = self.t.deriv(1, 0, p), self.t.deriv(0, 1, p)
        x_u, x_v = self.x.deriv(1, 0, p), self.x.deriv(0, 1, p)
        return t_u * x_v - t_v * x_u


def _shift_rule(W, base):
    # d^a_u d^b_v of the u_1-derivative of order `base`
    return lambda a, b, p: w_partial(W, base + a + 2 * b, p)


def jordan_plane_map(W: WSolution) -> PlaneMap:
    if W.nvars != 2:
        raise ValueError("the Jordan mapping needs a two-variable W")

    def x_rule(a, b, p):
        # d^a_u d^b_v (W_u - u W_v) = (1 - a) W_(1+a+2b) - u W_(2+a+2b)
        s = 1 + a + 2 * b
        return (1 - a) * w_partial(W, s, p) - p[0] * w_partial(W, s + 1, p)

    return PlaneMap(DerivSmooth(_shift_rule(W, 2)), DerivSmooth(x_rule))


def jordan_curve(W: WSolution) -> Smooth2:
    """``W_uuu``, whose zero set is the singular curve (J = W_uuu^2)."""
    return DerivSmooth(_shift_rule(W, 3))


def jordan_map(W: WSolution, point):
    t = w_partial(W, 2, point)
    x = w_partial(W, 1, point) - point[0] * t
    return t, x


def jordan_jacobian(W: WSolution, point) -> float:
    return w_partial(W, 3, point) ** 2


def solution_derivatives(W: WSolution, point):
    """``(u_x, v_x, u_t, v_t)`` of the Jordan-system solution at ``point``.

    These invert the 2x2 Jacobian of ``(u, v) -> (t, x)`` (determinant
    ``W_uuu^2``). The overall sign is fixed by that inversion; the opposite
    sign also solves the linear system but belongs to ``(-t, -x)``.
    """
    w3 = w_partial(W, 3, point)
    if abs(w3) <= SINGULAR_THRESHOLD:
        raise SingularPoint(f"W_uuu = {w3:.3e} at {tuple(point)}")
    wvv = w_partial(W, 4, point)
    u = point[0]
    return -wvv / w3**2, 1.0 / w3, 1.0 / w3 - u * wvv / w3**2, u / w3


# ---------------------------------------------------------------------------
# general lambda


@dataclass
class LambdaSystem:
    """``lam(u, v)`` and ``omega(u, v)``: polynomials, callables or Smooth2."""

    lam: object
    omega: object

    def __post_init__(self):
        self.lam = as_smooth(self.lam)
        self.omega = as_smooth(self.omega)

    def lam_u(self, p):
        return self.lam.deriv(1, 0, p)


def generic_map(sys: LambdaSystem, point):
    lu = sys.lam_u(point)
    if abs(lu) < 1e-12:
        raise DegenerateLambda(f"lambda_u = {lu:.3e} at {tuple(point)}")
    wu = sys.omega.deriv(1, 0, point)
    return wu / lu, sys.omega(point) - sys.lam(point) / lu * wu


def _derived_t_jet(sys: LambdaSystem, p, order):
    w = sys.omega.taylor(p, order + 1)
    lam = sys.lam.taylor(p, order + 1)
    return jet_div(w.diff(0), lam.diff(0), order)


def compatibility_residuals(sys: LambdaSystem, grid, t=None):
    """``(r_omega, r_t)``: max residuals of the omega equation and of
    ``t_uu = lam_u t_v - lam_v t_u`` over ``grid``. ``t`` defaults to the
    one induced by ``omega``; a constant omega passes trivially but gives a
    degenerate (constant) map."""
    t = None if t is None else as_smooth(t)
    r_w = r_t = 0.0
    for p in np.atleast_2d(np.asarray(grid, dtype=float)):
        lam = sys.lam.taylor(p, 2)
        lu, lv = jet_coeff(lam, 1, 0), jet_coeff(lam, 0, 1)
        luu = jet_coeff(lam, 2, 0)
        if abs(lu) < 1e-12:
            raise DegenerateLambda(f"lambda_u vanishes at {tuple(p)}")
        w = sys.omega.taylor(p, 2)
        wu, wv, wuu = jet_coeff(w, 1, 0), jet_coeff(w, 0, 1), jet_coeff(w, 2, 0)
        r_w = max(r_w, abs(wuu + (lv - luu / lu) * wu - lu * wv))
        tj = t.taylor(p, 2) if t is not None else _derived_t_jet(sys, p, 2)
        tu, tv, tuu = jet_coeff(tj, 1, 0), jet_coeff(tj, 0, 1), jet_coeff(tj, 2, 0)
        r_t = max(r_t, abs(tuu - lu * tv + lv * tu))
    return r_w, r_t


# ---------------------------------------------------------------------------
# Whitney vector field  grad_V = -G_v d_u + G_u d_v  for a curve function G


def _project_to_curve(curve: Smooth2, p, tol):
    p = np.array(p, dtype=float)
    g = curve(p)
    if abs(g) > tol:
        raise NotOnCurve(f"|G| = {abs(g):.3e} > {tol:g} at {tuple(p)}")
    for _ in range(3):
        gu = curve.deriv(1, 0, p)
        if g == 0.0 or abs(gu) < 1e-8:
            break
        q = p.copy()
        q[0] -= g / gu
        gq = curve(q)
        if abs(gq) >= abs(g):
            break
        p, g = q, gq
    return p


def _apply_field(f, g, order):
    # -g_v f_u + g_u f_v on jets, truncated to `order`
    out = (-1.0) * _jmul(g.diff(1), f.diff(0), order) + _jmul(g.diff(0), f.diff(1), order)
    return out


def _jmul(a, b, order):
    from .calculus import jet_mul

    return jet_mul(a, b, order)


def whitney_iterate(F: PlaneMap, curve, p, m: int, on_curve_tol=ON_CURVE_TOL, project=True):
    """``grad_V^m (t, x)`` at ``p`` by repeated application of the field.

    ``curve`` is the function whose zero set is the singular curve. For the
    parabolic maps pass ``t_u`` (``W_uuu`` in the Jordan case): the Jacobian
    itself is a square there, its gradient vanishes on the curve and the
    tangent would come out as (0, 0).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    curve = as_smooth(curve)
    if project:
        p = _project_to_curve(curve, p, on_curve_tol)
    order = m + 1
    g = curve.taylor(p, order)
    vec = np.array([-jet_coeff(g, 0, 1), jet_coeff(g, 1, 0)])
    if np.hypot(*vec) <= TANGENT_TOL:
        raise DegenerateTangent(f"tangent vector vanishes at {tuple(p)}")
    out = []
    for comp in (F.t, F.x):
        f = comp.taylor(p, order)
        for k in range(m):
            f = _apply_field(f, g, order - k - 1)
        out.append(jet_coeff(f, 0, 0))
    return np.array(out)


def whitney_field(F: PlaneMap, curve, p, on_curve_tol=ON_CURVE_TOL):
    """Tangent vector ``V = (-G_v, G_u)`` and ``grad_V (t, x)`` at ``p``."""
    curve = as_smooth(curve)
    p = _project_to_curve(curve, p, on_curve_tol)
    vec = np.array([-curve.deriv(0, 1, p), curve.deriv(1, 0, p)])
    if np.hypot(*vec) <= TANGENT_TOL:
        raise DegenerateTangent(f"tangent vector vanishes at {tuple(p)}")
    return vec, whitney_iterate(F, curve, p, 1, project=False)


def whitney_closed_form(lam, t, p):
    """First-order field on the curve, ``lam_u t_v^2 (1, -lam)``."""
    lam, t = as_smooth(lam), as_smooth(t)
    lu = lam.deriv(1, 0, p)
    tv = t.deriv(0, 1, p)
    return lu * tv**2 * np.array([1.0, -lam(p)])


def jordan_whitney(W: WSolution, p, m: int):
    return whitney_iterate(jordan_plane_map(W), jordan_curve(W), p, m)


# ---------------------------------------------------------------------------
# singular curve and image sampling


SingularCurveTrace = ZeroSetTrace


def trace_singular_curve(W: WSolution, rectangle, resolution: int) -> SingularCurveTrace:
    """Polylines of ``{W_uuu = 0}``; ``trace.empty`` reports a sign-definite box."""
    if resolution < 8:
        raise ValueError("resolution must be >= 8 nodes per axis")
    return trace_zero_set(lambda pts: W.shifted(3, pts), rectangle, resolution)


GRID_COLUMNS = ("u", "v", "t", "x", "J")


def image_grid(F, rectangle, resolution: int) -> np.ndarray:
    """Rows ``(u, v, t, x, J)`` in row-major order: ``v`` outer, ``u`` inner.

    ``F`` is a two-variable WSolution (vectorized path) or a ``PlaneMap``.
    A zero-area rectangle yields no rows.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    u0, u1, v0, v1 = rectangle
    if not (u1 > u0 and v1 > v0):
        return np.zeros((0, 5))
    us = np.linspace(u0, u1, resolution)
    vs = np.linspace(v0, v1, resolution)
    U, V = np.meshgrid(us, vs)
    pts = np.column_stack([U.ravel(), V.ravel()])
    if isinstance(F, PlaneMap):
        rows = [(u, v, *F((u, v)), F.jacobian((u, v))) for u, v in pts]
        return np.array(rows, dtype=float)
    t = F.shifted(2, pts)
    x = F.shifted(1, pts) - pts[:, 0] * t
    J = F.shifted(3, pts) ** 2
    return np.column_stack([pts, t, x, J])


def normal_form_solution(k: int) -> TauSeries:
    """``W = P_{k+3}``, whose Jordan map is the order-k normal form."""
    taus = [0] * (k + 3) + [1]
    return TauSeries(tuple(taus), 2)


def poly_plane_map(t: SparsePoly, x: SparsePoly) -> PlaneMap:
    return PlaneMap(t, x)
