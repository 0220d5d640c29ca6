"""Order-k singular points of the Jordan mapping and their normal forms.

At a point with derivative ladder ``A_l = d^l W/du^l`` the mapping has order
``k`` when ``A_3 = ... = A_{k+2} = 0`` and ``A_{k+3} != 0``. Locally it is then
``t = P_{k+1}, x = P_{k+2} - u P_{k+1}`` in the shifted variables, with
double-scaling exponents ``(k+1, k+2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Optional

import numpy as np

from .errors import DegenerateDirection, DegenerateTarget, UnresolvedOrder
from .heat import TauSeries, WSolution, w_ladder, w_partial
from .parabolic import jordan_map
from .polynomial import SparsePoly
from .schur import CurveFactorization, esp_poly, exact_parabola_coeffs, factor_esp

DEFAULT_TOL = 1e-9
DEFAULT_EPS = tuple(10.0 ** -np.linspace(1, 3, 9))


@dataclass(frozen=True)
class SingularityReport:
    point: tuple
    order: int
    ladder: tuple  # A_3 .. A_{k+3}
    tol: float
    exponents: tuple
    locus: Optional[CurveFactorization]

    @property
    def regular(self) -> bool:
        return self.order == 0


def classify(W: WSolution, point, tol: float = DEFAULT_TOL, kmax: int = 8) -> SingularityReport:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    lad = w_ladder(W, point, kmax + 3)
    vals = [lad[l] for l in range(3, kmax + 4)]
    scale = max(1.0, max(abs(a) for a in vals))
    for k, a in enumerate(vals):
        if abs(a) > tol * scale:
            return SingularityReport(
                point=tuple(float(x) for x in point),
                order=k,
                ladder=tuple(vals[: k + 1]),
                tol=tol,
                exponents=(k + 1, k + 2),
                locus=factor_esp(k) if k >= 1 else None,
            )
    raise UnresolvedOrder(f"A_3..A_{kmax + 3} all vanish at {tuple(point)}; raise kmax")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormMap:
    k: int
    t: SparsePoly
    x: SparsePoly

    def jacobian(self) -> SparsePoly:
        return self.t.diff(0) * self.x.diff(1) - self.t.diff(1) * self.x.diff(0)

    def __call__(self, p):
        return self.t(p), self.x(p)


def normal_form(k: int) -> NormalFormMap:
    if k < 0:
        raise ValueError("k must be >= 0")
    u = SparsePoly.variable(2, 0)
    t = esp_poly(k + 1, 2)
    return NormalFormMap(k, t, esp_poly(k + 2, 2) - u * t)


def _local_deviation(W, point, du, dv):
    t0, x0 = jordan_map(W, point)
    t, x = jordan_map(W, (point[0] + du, point[1] + dv))
    # co-moving frame; the -du * t0 drift cancels against A_2 du inside W_u
    return t - t0, (x - x0) + point[0] * (t - t0)


def scaling_exponents_fit(W: WSolution, point, direction=(1.0, 1.0), eps=DEFAULT_EPS,
                          tol: float = DEFAULT_TOL):
    """Log-log slopes of ``|dt|`` and ``|dx|`` along ``(eps u, eps^2 v)``."""
    rep = classify(W, point, tol)
    nf = normal_form(rep.order)
    ub, vb = direction
    scale = max(1.0, abs(ub) ** (rep.order + 2), abs(vb) ** ((rep.order + 2) / 2))
    if abs(nf.t((ub, vb))) < 1e-12 * scale or abs(nf.x((ub, vb))) < 1e-12 * scale:
        raise DegenerateDirection(f"direction {direction} lies on a leading-term zero set")
    eps = np.asarray(eps, dtype=float)
    dts, dxs = [], []
    for e in eps:
        dt, dx = _local_deviation(W, point, e * ub, e * e * vb)
        dts.append(abs(dt))
        dxs.append(abs(dx))
    le = np.log(eps)
    gamma = np.polyfit(le, np.log(dts), 1)[0]
    delta = np.polyfit(le, np.log(dxs), 1)[0]
    return float(gamma), float(delta)


def area_scaling_slope(k: int, direction=(1.0, 1.0), eps=DEFAULT_EPS) -> float:
    """Slope of ``log J`` vs ``log eps`` for the order-k normal form (expected 2k)."""
    jac = normal_form(k).jacobian()
    ub, vb = direction
    vals = [abs(jac((e * ub, e * e * vb))) for e in eps]
    return float(np.polyfit(np.log(eps), np.log(vals), 1)[0])


# ---------------------------------------------------------------------------
# singular locus P_k = 0 and its image


@dataclass(frozen=True)
class SingularLocus:
    k: int
    line: bool
    parabolas: tuple

    def branches(self):
        out = ["line"] if self.line else []
        return out + list(range(len(self.parabolas)))


def singular_locus(k: int) -> SingularLocus:
    if k < 1:
        raise ValueError("k must be >= 1")
    f = factor_esp(k)
    return SingularLocus(k, f.linear_factor, f.parabola_coeffs)


@dataclass(frozen=True)
class ImageCurveBranch:
    k: int
    branch: object  # "line" or parabola index
    B: object
    C: object
    c: object  # parabola coefficient (None for the line)
    samples: np.ndarray  # rows (param, u, v, t, x)

    def t_poly(self) -> np.ndarray:
        """Coefficients (low to high) of t along the branch parameter."""
        if self.branch == "line":
            m = (self.k + 1) // 2
            out = np.zeros(m + 1)
            out[m] = float(self.B)
            return out
        out = np.zeros(self.k + 2)
        out[self.k + 1] = float(self.B)
        return out

    def x_poly(self) -> np.ndarray:
        if self.branch == "line":
            return np.zeros(1)
        out = np.zeros(self.k + 3)
        out[self.k + 2] = float(self.C)
        return out


def _parabola_constants(k, c):
    p1, p2 = esp_poly(k + 1, 2), esp_poly(k + 2, 2)
    if isinstance(c, Fraction):
        pt = (Fraction(1), -1 / c)
        b = p1.evaluate(pt)
        return b, p2.evaluate(pt) - b
    pt = (1.0, -1.0 / c)
    b = p1(pt)
    return b, p2(pt) - b


def image_curve(k: int, branch, samples=None) -> ImageCurveBranch:
    """Image of one branch of ``P_k = 0`` under the order-k normal form.

    On ``u^2 + c v = 0`` the image is exactly ``(B u^{k+1}, C u^{k+2})``; on
    the line ``u = 0`` (odd k) it is ``(v^m / m!, 0)`` with ``m = (k+1)/2``.
    """
    loc = singular_locus(k)
    if samples is None:
        samples = np.linspace(-1.0, 1.0, 41)
    s = np.asarray(samples, dtype=float)
    if branch == "line":
        if not loc.line:
            raise ValueError(f"k={k} has no line branch")
        m = (k + 1) // 2
        B = Fraction(1, factorial(m))
        rows = np.column_stack([s, np.zeros_like(s), s, float(B) * s**m, np.zeros_like(s)])
        return ImageCurveBranch(k, "line", B, Fraction(0), None, rows)
    idx = int(branch)
    if not 0 <= idx < len(loc.parabolas):
        raise ValueError(f"k={k} has {len(loc.parabolas)} parabola branches")
    c = exact_parabola_coeffs(k)[idx]
    B, C = _parabola_constants(k, c)
    v = -(s**2) / float(c)
    rows = np.column_stack([s, s, v, float(B) * s ** (k + 1), float(C) * s ** (k + 2)])
    return ImageCurveBranch(k, idx, B, C, c, rows)


def _curve_derivs(coeffs, u, order):
    p = np.polynomial.Polynomial(coeffs)
    return p.deriv(order)(u) if order else p(u)


def curvature(branch: ImageCurveBranch, u) -> np.ndarray:
    tp, xp = branch.t_poly(), branch.x_poly()
    t1, t2 = _curve_derivs(tp, u, 1), _curve_derivs(tp, u, 2)
    x1, x2 = _curve_derivs(xp, u, 1), _curve_derivs(xp, u, 2)
    return np.abs(t1 * x2 - x1 * t2) / (t1**2 + x1**2) ** 1.5


def curvature_exponent(k: int, branch=0, ubar=None) -> float:
    if branch == "line":
        raise ValueError("the line branch images are straight")
    if ubar is None:
        ubar = np.logspace(-6, -1, 11)
    ubar = np.asarray(ubar, dtype=float)
    kap = curvature(image_curve(k, branch), ubar)
    return float(np.polyfit(np.log(ubar), np.log(kap), 1)[0])


class Rotation(str, Enum):
    CONTINUOUS = "continuous"
    PI_FLIP = "pi_flip"


def tangent_rotation(k: int, branch=0, eps: float = 1e-4, tol: float = 1e-3) -> Rotation:
    """Compare unit tangents of the image branch at ``u = -eps`` and ``+eps``."""
    if branch == "line":
        raise ValueError("tangent rotation is defined for parabola branches")
    br = image_curve(k, branch)
    tp, xp = br.t_poly(), br.x_poly()

    def unit(u):
        d = np.array([_curve_derivs(tp, u, 1), _curve_derivs(xp, u, 1)])
        return d / np.linalg.norm(d)

    dot = float(unit(-eps) @ unit(eps))
    if dot <= -1 + tol:
        return Rotation.PI_FLIP
    if dot >= 1 - tol:
        return Rotation.CONTINUOUS
    raise ValueError(f"tangent dot product {dot:.6f} is neither +1 nor -1")


# ---------------------------------------------------------------------------
# multiplicity by resultant


def _det_fraction(mat):
    n = len(mat)
    a = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def _sylvester(f, g):
    # f, g: coefficient lists high -> low with formal (possibly zero) leads
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return [[Fraction(1)]]
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(f) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(g) + [Fraction(0)] * (size - n - 1 - i))
    return rows


def _interpolate(xs, ys):
    """Exact Newton interpolation; coefficients low -> high."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for d in range(n - 1):
            new[d + 1] += out[d]
            new[d] -= out[d] * xs[i]
        new[0] += coef[i]
        out = new
    return out


def resultant_in_v(f: SparsePoly, g: SparsePoly) -> list:
    """``Res_v(f, g)`` as exact coefficients in ``u`` (low -> high)."""
    df, dg = f.degree_in(1), g.degree_in(1)
    fu, gu = f.univariate(1), g.univariate(1)
    bound = dg * f.degree_in(0) + df * g.degree_in(0)
    xs = [Fraction(i - bound // 2) for i in range(bound + 1)]
    ys = []
    for x in xs:
        fc = [c.evaluate((x, 0)) for c in reversed(fu)]
        gc = [c.evaluate((x, 0)) for c in reversed(gu)]
        ys.append(_det_fraction(_sylvester(fc, gc)))
    coeffs = _interpolate(xs, ys)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def multiplicity(k: int, target) -> int:
    """Number of complex preimages of ``target`` under the order-k normal form."""
    nf = normal_form(k)
    tt, xx = (Fraction(float(c)) if not isinstance(c, Fraction) else c for c in target)
    f = nf.t - tt
    g = nf.x - xx
    res = resultant_in_v(f, g)
    if not res:
        raise DegenerateTarget(f"resultant vanishes identically at target {tuple(target)}")
    roots = np.roots([float(c) for c in reversed(res)])
    return int(len(roots))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultitimeResult:
    t: float
    x: float
    locus_residual: float


def multitime_map(taus, point) -> MultitimeResult:
    """Map of ``W = sum tau_j P_j`` by direct differentiation; the locus
    residual is ``W_uuu = sum tau_{j+3} P_j``."""
    W = TauSeries(tuple(taus), 2)
    t, x = jordan_map(W, point)
    return MultitimeResult(t, x, w_partial(W, 3, point))
