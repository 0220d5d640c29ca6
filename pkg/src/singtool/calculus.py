"""Local Taylor data for smooth functions of two variables.

Everything downstream (Whitney fields, compatibility residuals) works on
truncated Taylor polynomials in the displacement ``(du, dv)`` around a point.
Those come exactly from polynomials or closed-form derivative rules, and from
finite differences for plain callables.
"""
from __future__ import annotations

from math import comb, factorial

import numpy as np

from .polynomial import SparsePoly

_EPS = np.finfo(float).eps


class Smooth2:
    """A function of ``(u, v)`` with access to partial derivatives."""

    exact = True

    def __call__(self, p) -> float:
        return self.deriv(0, 0, p)

    def deriv(self, a: int, b: int, p) -> float:
        raise NotImplementedError

    def taylor(self, p, order: int) -> SparsePoly:
        terms = {}
        for n in range(order + 1):
            for a in range(n + 1):
                b = n - a
                d = self.deriv(a, b, p)
                if d:
                    terms[(a, b)] = float(d) / (factorial(a) * factorial(b))
        return SparsePoly(2, terms)


class PolySmooth(Smooth2):
    def __init__(self, poly: SparsePoly):
        if poly.nvars != 2:
            raise ValueError("PolySmooth needs a two-variable polynomial")
        self.poly = poly
        self._cache = {}

    def deriv(self, a, b, p):
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = self.poly.diff(0, a).diff(1, b)
        return self._cache[key](p)

    def taylor(self, p, order):
        return self.poly.taylor_shift([float(x) for x in p], order)


class DerivSmooth(Smooth2):
    """Backed by a closed-form rule ``deriv_fn(a, b, p)``."""

    def __init__(self, deriv_fn):
        self._fn = deriv_fn

    def deriv(self, a, b, p):
        return float(self._fn(a, b, p))


def _central_weights(k):
    # stencil offsets (in units of h) and weights of the k-th central difference
    offsets = np.array([k / 2.0 - i for i in range(k + 1)])
    weights = np.array([(-1) ** i * comb(k, i) for i in range(k + 1)], dtype=float)
    return offsets, weights


class CallableSmooth(Smooth2):
    """Finite-difference derivatives of ``f(u, v)``.

    First derivatives use plain central differences with
    ``h = 1e-5 * max(1, |coordinate|)``. Higher and mixed orders use
    tensor-product central stencils with one Richardson step and a step
    ``eps**(1/(n+4))`` that balances round-off against the O(h^4) remainder.
    """

    exact = False

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, p):
        return float(self.fn(float(p[0]), float(p[1])))

    def _stencil(self, a, b, p, hu, hv):
        ou, wu = _central_weights(a)
        ov, wv = _central_weights(b)
        total = 0.0
        for du, cu in zip(ou, wu):
            for dv, cv in zip(ov, wv):
                total += cu * cv * self.fn(p[0] + du * hu, p[1] + dv * hv)
        return total / (hu**a * hv**b)

    def deriv(self, a, b, p):
        p = (float(p[0]), float(p[1]))
        n = a + b
        if n == 0:
            return self(p)
        su, sv = max(1.0, abs(p[0])), max(1.0, abs(p[1]))
        if n == 1:
            return self._stencil(a, b, p, 1e-5 * su, 1e-5 * sv)
        h = _EPS ** (1.0 / (n + 4))
        coarse = self._stencil(a, b, p, h * su, h * sv)
        fine = self._stencil(a, b, p, 0.5 * h * su, 0.5 * h * sv)
        return (4.0 * fine - coarse) / 3.0


def as_smooth(obj) -> Smooth2:
    if isinstance(obj, Smooth2):
        return obj
    if isinstance(obj, SparsePoly):
        return PolySmooth(obj)
    if callable(obj):
        return CallableSmooth(obj)
    if isinstance(obj, (int, float)):
        return PolySmooth(SparsePoly.constant(2, obj))
    raise TypeError(f"cannot treat {type(obj).__name__} as a smooth function")


# ---------------------------------------------------------------------------
# truncated jet arithmetic on SparsePoly in the displacement variables


def jet_coeff(jet: SparsePoly, a: int, b: int) -> float:
    """Partial derivative ``d^a_u d^b_v`` at the expansion point."""
    return float(jet.coefficient((a, b))) * factorial(a) * factorial(b)


def jet_mul(f: SparsePoly, g: SparsePoly, order: int) -> SparsePoly:
    out = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = (e1[0] + e2[0], e1[1] + e2[1])
            if e[0] + e[1] <= order:
                out[e] = out.get(e, 0) + c1 * c2
    return SparsePoly(2, out)


def jet_reciprocal(g: SparsePoly, order: int) -> SparsePoly:
    c0 = float(g.coefficient((0, 0)))
    if c0 == 0.0:
        raise ZeroDivisionError("jet has zero constant term")
    rest = (g - c0) * (-1.0 / c0)
    out = SparsePoly.constant(2, 1.0)
    power = SparsePoly.constant(2, 1.0)
    for _ in range(order):
        power = jet_mul(power, rest, order)
        out = out + power
    return out * (1.0 / c0)


def jet_div(f: SparsePoly, g: SparsePoly, order: int) -> SparsePoly:
    return jet_mul(f, jet_reciprocal(g, order), order)
