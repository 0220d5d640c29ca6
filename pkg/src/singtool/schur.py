"""Elementary Schur polynomials (ESPs) and their Hermite-root factorization.

``P_j(u_1..u_n)`` is the coefficient of ``z^j`` in ``exp(sum_l z^l u_l)``.
Differentiating the generating relation in ``z`` gives the recurrence

    j P_j = sum_{l=1}^{min(j,n)} l u_l P_{j-l},

which drives both the exact construction and the float evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, sqrt

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from . import kernels
from .errors import DomainError, NumericFailure
from .polynomial import SparsePoly


@lru_cache(maxsize=None)
def esp_poly(j: int, n: int) -> SparsePoly:
    """Exact ``P_j`` in ``n`` variables (zero polynomial for ``j < 0``)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if j < 0:
        return SparsePoly(n)
    if j == 0:
        return SparsePoly.constant(n, 1)
    acc = SparsePoly(n)
    for l in range(1, min(j, n) + 1):
        acc = acc + SparsePoly.variable(n, l - 1) * esp_poly(j - l, n) * l
    return acc * Fraction(1, j)


def esp_ladder(points, jmax: int) -> np.ndarray:
    """``P_0..P_jmax`` at each row of ``points``; shape ``(m, jmax + 1)``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if jmax < 0:
        return np.zeros((pts.shape[0], 0))
    return kernels.esp_ladder(pts, jmax)


def esp_eval(j: int, point) -> float:
    """Single value, with the recurrence carried in double-double so that
    cancellation between terms does not cost relative accuracy."""
    if j < 0:
        return 0.0
    pts = np.asarray(point, dtype=float)[None, :]
    return float(kernels.esp_ladder_dd(pts, j)[0, j])


# ---------------------------------------------------------------------------
# Hermite polynomials (physicists' convention, exp(2 a w - w^2))


def hermite_eval(j: int, alpha: float) -> float:
    if j < 0:
        raise ValueError("degree must be non-negative")
    h_prev, h = 0.0, 1.0
    for i in range(j):
        h_prev, h = h, 2.0 * alpha * h - 2.0 * i * h_prev
    return h


@dataclass(frozen=True)
class HermiteRootSet:
    degree: int
    roots: tuple


def hermite_roots(j: int) -> HermiteRootSet:
    """Roots of ``H_j`` from the symmetric Jacobi matrix (Golub-Welsch).

    The monic recurrence ``x p_i = p_{i+1} + (i/2) p_{i-1}`` gives a zero
    diagonal and off-diagonal ``sqrt(i/2)``. Eigenvalues get one Newton polish
    and are symmetrized about zero.
    """
    if j < 1:
        raise ValueError("degree must be >= 1")
    if j == 1:
        return HermiteRootSet(1, (0.0,))
    off = np.sqrt(np.arange(1, j) / 2.0)
    try:
        x = eigh_tridiagonal(np.zeros(j), off, eigvals_only=True)
    except LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericFailure(f"tridiagonal eigensolve failed for H_{j}") from exc
    if not np.all(np.isfinite(x)):
        raise NumericFailure(f"non-finite Hermite roots for H_{j}")
    x = np.sort(x)
    polished = []
    for a in x:
        d = 2.0 * j * hermite_eval(j - 1, a)
        if d != 0.0:
            a = a - hermite_eval(j, a) / d
        polished.append(a)
    x = np.sort(np.array(polished))
    x = 0.5 * (x - x[::-1])
    if j % 2:
        x[j // 2] = 0.0
    if np.any(np.diff(x) <= 0):
        raise NumericFailure(f"Hermite roots of H_{j} are not distinct")
    return HermiteRootSet(j, tuple(float(a) for a in x))


# ---------------------------------------------------------------------------
# factorization P_k = (1/k!) u^{k mod 2} prod_i (u^2 + c_i v)


@dataclass(frozen=True)
class CurveFactorization:
    k: int
    leading: Fraction
    linear_factor: bool
    parabola_coeffs: tuple

    def __call__(self, u: float, v: float) -> float:
        val = float(self.leading)
        if self.linear_factor:
            val *= u
        for c in self.parabola_coeffs:
            val *= u * u + c * v
        return val


def _snap(k: int, c: float):
    """``c`` as a ``Fraction`` when a small-denominator rational makes
    ``P_k(1, -1/c)`` vanish exactly, else ``c`` unchanged."""
    q = Fraction(c).limit_denominator(1000)
    if q != 0 and esp_poly(k, 2).evaluate((1, -1 / q)) == 0:
        return q
    return c


@lru_cache(maxsize=None)
def factor_esp(k: int) -> CurveFactorization:
    if k < 1:
        raise ValueError("k must be >= 1")
    roots = hermite_roots(k).roots
    positive = sorted(float(_snap(k, 4.0 * a * a)) for a in roots if a > 0)
    return CurveFactorization(
        k=k,
        leading=Fraction(1, factorial(k)),
        linear_factor=bool(k % 2),
        parabola_coeffs=tuple(positive),
    )


@lru_cache(maxsize=None)
def exact_parabola_coeffs(k: int) -> tuple:
    """Parabola coefficients, as ``Fraction`` where they are exactly rational."""
    return tuple(_snap(k, c) for c in factor_esp(k).parabola_coeffs)


def esp_eval_hermite(j: int, u: float, v: float, fallback: bool = True) -> float:
    """``P_j(u, v) = ((-v)^{j/2} / j!) H_j(u / (2 sqrt(-v)))`` for ``v < 0``.

    For ``v >= 0`` the square root is imaginary; with ``fallback`` the value
    comes from the real factorized form instead, otherwise ``DomainError``.
    """
    if j < 0:
        return 0.0
    if j == 0:
        return 1.0
    if v < 0:
        w = sqrt(-v)
        return (w**j / factorial(j)) * hermite_eval(j, u / (2.0 * w))
    if not fallback:
        raise DomainError("direct Hermite form needs v < 0")
    return factor_esp(j)(u, v)
