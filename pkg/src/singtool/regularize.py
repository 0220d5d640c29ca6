"""Multicomponent Jordan hierarchy: surfaces S in R^N and their maps to (t, x).

For ``W(u_1..u_N)`` solving the heat hierarchy the surface is cut out by
``d^l W/du_1^l = 0`` for ``l = 3..N``; on it ``t = W_{u_2}``,
``x = W_{u_1} - u_1 W_{u_2}`` is regular wherever ``d^{N+1} W/du_1^{N+1} != 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateCharacteristic,
    NoConvergence,
    OffSurface,
    SingularNewtonJacobian,
    UnresolvedOrder,
)
from .heat import WSolution, w_partial
from .polynomial import SparsePoly
from .schur import esp_eval, esp_poly

SURFACE_TOL = 1e-8
PROJECT_TOL = 1e-6
NEWTON_TOL = 1e-10
NEWTON_MAXITER = 50


def _check_dim(W):
    if W.nvars < 3:
        raise ValueError("surfaces need N >= 3 variables")


def _shifts(W, point, lo, hi):
    return np.array([w_partial(W, s, point) for s in range(lo, hi + 1)])


def surface_residuals(W: WSolution, point) -> np.ndarray:
    """``(r_3, .., r_N)`` with ``r_l = d^l W/du_1^l``."""
    _check_dim(W)
    return _shifts(W, point, 3, W.nvars)


def _newton_step(W, p):
    N = W.nvars
    m = N - 2
    r = _shifts(W, p, 3, N)
    lad = _shifts(W, p, 0, 2 * N)
    # d r_l / d u_j = shift(l + j), l = 3..N, j = 1..N-2
    jac = np.array([[lad[l + j] for j in range(1, m + 1)] for l in range(3, N + 1)])
    return r, jac


def _project(W, point):
    p = np.array(point, dtype=float)
    r, jac = _newton_step(W, p)
    try:
        p[: W.nvars - 2] -= np.linalg.solve(jac, r)
    except np.linalg.LinAlgError:
        return p
    return p


def surface_map(W: WSolution, point, tol: float = SURFACE_TOL):
    """``(t, x)`` at a point of S; one projection step is allowed when the
    residual is small but above ``tol``."""
    res = np.max(np.abs(surface_residuals(W, point)))
    if res > tol:
        if res <= PROJECT_TOL:
            point = _project(W, point)
            res = np.max(np.abs(surface_residuals(W, point)))
        if res > tol:
            raise OffSurface(f"surface residual {res:.3e} at {tuple(point)}")
    t = w_partial(W, 2, point)
    return t, w_partial(W, 1, point) - point[0] * t


@dataclass(frozen=True)
class JacobianBlock:
    matrix: np.ndarray  # 2 x N
    det: float  # trailing 2x2 determinant
    expected: float  # (d^{N+1} W / du_1^{N+1})^2

    @property
    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.matrix))


def jacobian_block(W: WSolution, point) -> JacobianBlock:
    _check_dim(W)
    N = W.nvars
    lad = _shifts(W, point, 0, N + 3)
    u1 = point[0]
    mat = np.zeros((2, N))
    for l in range(1, N + 1):
        mat[0, l - 1] = lad[2 + l]
        mat[1, l - 1] = lad[1 + l] - (lad[2] if l == 1 else 0.0) - u1 * lad[2 + l]
    det = mat[0, N - 2] * mat[1, N - 1] - mat[0, N - 1] * mat[1, N - 2]
    return JacobianBlock(mat, float(det), float(lad[N + 1] ** 2))


@dataclass(frozen=True)
class SurfacePoint:
    point: tuple
    residual: float
    condition: float
    iterations: int


def solve_surface_point(W: WSolution, chart, guess, tol: float = NEWTON_TOL,
                        maxiter: int = NEWTON_MAXITER) -> SurfacePoint:
    """Newton on ``u_1..u_{N-2}`` with ``(u_{N-1}, u_N) = chart`` held fixed."""
    _check_dim(W)
    N = W.nvars
    guess = np.asarray(guess, dtype=float)
    if guess.shape != (N - 2,) or not np.all(np.isfinite(guess)):
        raise ValueError(f"guess must be {N - 2} finite numbers")
    p = np.concatenate([guess, np.asarray(chart, dtype=float)])
    for it in range(maxiter + 1):
        r, jac = _newton_step(W, p)
        res = float(np.max(np.abs(r)))
        if not np.isfinite(res):
            break
        cond = float(np.linalg.cond(jac))
        if res <= tol:
            if not np.isfinite(cond) or cond > 1e12:
                raise SingularNewtonJacobian(f"condition {cond:.3e} at the solution")
            return SurfacePoint(tuple(p), res, cond, it)
        if it == maxiter:
            break
        try:
            step = np.linalg.solve(jac, r)
        except np.linalg.LinAlgError as exc:
            raise SingularNewtonJacobian(f"singular Newton matrix at {tuple(p)}") from exc
        p[: N - 2] -= step
    raise NoConvergence(f"no surface point within {maxiter} iterations")


# ---------------------------------------------------------------------------
# regularization of the order-k normal form


@dataclass(frozen=True)
class RegularizedChart:
    k: int
    N: int
    potential: SparsePoly
    surface_equations: tuple

    def chart(self, point):
        """``(t, x)`` on the surface: the coordinates ``(u_{k+1}, u_{k+2})``."""
        t = self.potential.diff(1)
        x = self.potential.diff(0) - SparsePoly.variable(self.N, 0) * t
        return t.evaluate(point), x.evaluate(point)


def regularize_normal_form(k: int) -> RegularizedChart:
    if k < 1:
        raise ValueError("k must be >= 1")
    N = k + 2
    eqs = tuple(esp_poly(3 + k - m, N) for m in range(3, 3 + k))
    return RegularizedChart(k, N, esp_poly(3 + k, N), eqs)


def triangular_chain(k: int) -> bool:
    """``P_1 = .. = P_k = 0`` forces ``u_1 = .. = u_k = 0`` one step at a time."""
    N = k + 2
    for j in range(1, k + 1):
        q = esp_poly(j, N).restrict({i: 0 for i in range(j - 1)})
        if q != SparsePoly.variable(N, j - 1):
            return False
    return True


@dataclass(frozen=True)
class PlanePair:
    t: SparsePoly
    x: SparsePoly

    def jacobian(self) -> SparsePoly:
        return self.t.diff(0) * self.x.diff(1) - self.t.diff(1) * self.x.diff(0)


def partial_regularization(k: int, N: int) -> PlanePair:
    """The order-k map restricted to ``u_1 = .. = u_{N-2} = 0``; a polynomial
    pair in ``(u_{N-1}, u_N)``."""
    if not 3 <= N < k + 2:
        raise ValueError("need 3 <= N < k + 2")
    zero = {i: 0 for i in range(N - 2)}
    keep = (N - 2, N - 1)
    t = esp_poly(k + 1, N).restrict(zero).select(keep)
    x = esp_poly(k + 2, N).restrict(zero).select(keep)
    return PlanePair(t, x)


@dataclass(frozen=True)
class NReport:
    N: int
    order: int
    ladder: tuple  # d^l W / du_1^l for l = N+1 .. N+k+1
    exponents: tuple  # (t, x) exponents as printed: (N+k+1, N+k)
    map_weights: tuple  # weighted degrees of the normal form pair


def classify_N(W: WSolution, point, tol: float = 1e-9, kmax: int = 8) -> NReport:
    res = np.max(np.abs(surface_residuals(W, point)))
    if res > SURFACE_TOL:
        raise OffSurface(f"surface residual {res:.3e} at {tuple(point)}")
    N = W.nvars
    vals = _shifts(W, point, N + 1, N + 1 + kmax)
    scale = max(1.0, float(np.max(np.abs(vals))))
    for k, a in enumerate(vals):
        if abs(a) > tol * scale:
            ladder = tuple(float(a) for a in vals[: k + 1])
            return NReport(N, k, ladder, (N + k + 1, N + k), (N + k - 1, N + k))
    raise UnresolvedOrder(f"ladder vanishes up to order {N + 1 + kmax}")


@dataclass(frozen=True)
class NormalFormN:
    N: int
    k: int
    t: SparsePoly
    x: SparsePoly
    surface: tuple


def normal_form_N(N: int, k: int) -> NormalFormN:
    if N < 3 or k < 0:
        raise ValueError("need N >= 3 and k >= 0")
    u1 = SparsePoly.variable(N, 0)
    t = esp_poly(N + k - 1, N)
    x = esp_poly(N + k, N) - u1 * t
    surface = tuple(esp_poly(N + k + 1 - l, N) for l in range(3, N + 1))
    return NormalFormN(N, k, t, x, surface)


# ---------------------------------------------------------------------------


def symmetry_map(W: WSolution, s: int, point):
    """``(t_s, x)`` from ``t_s p_{s-1} = W_v``, ``x + t_s p_s = W_u``."""
    if W.nvars != 2:
        raise ValueError("symmetry_map takes a two-variable W")
    if s < 1:
        raise ValueError("symmetry index must be >= 1")
    pm = esp_eval(s - 1, point)
    if abs(pm) < 1e-12:
        raise DegenerateCharacteristic(f"p_{s - 1} = {pm:.3e} at {tuple(point)}")
    ts = w_partial(W, 2, point) / pm
    return ts, w_partial(W, 1, point) - ts * esp_eval(s, point)


@dataclass(frozen=True)
class MultiTime:
    times: tuple  # t_0 .. t_{N-1}
    residual: float


def multi_time_map(W: WSolution, point) -> MultiTime:
    """Solve ``sum_{s >= l-1} t_s P_{s+1-l}(u) = W_{u_l}`` for ``l = N..1``."""
    N = W.nvars
    rhs = _shifts(W, point, 1, N)  # W_{u_l} = shift l
    P = np.array([esp_eval(j, point) for j in range(N + 1)])
    ts = np.zeros(N)
    for l in range(N, 0, -1):
        ts[l - 1] = rhs[l - 1] - sum(ts[s] * P[s + 1 - l] for s in range(l, N))
    resid = max(
        abs(sum(ts[s] * P[s + 1 - l] for s in range(l - 1, N)) - rhs[l - 1]) for l in range(1, N + 1)
    )
    return MultiTime(tuple(float(t) for t in ts), float(resid))
