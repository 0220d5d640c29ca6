"""Solutions of the heat hierarchy  dW/du_m = d^m W / du_1^m.

Two exact representations:

* ``TauSeries``: ``W = sum_j tau_j P_j(u_1..u_N)``
* ``Spectral``: ``W = sum_m f_m exp(sum_l lam_m^l u_l)`` (a discrete measure)

For both, any mixed partial with multi-index ``a`` equals the pure
``u_1``-derivative of order ``sum_l l*a_l``, called the *shift* below.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .polynomial import SparsePoly
from .schur import esp_ladder, esp_poly


@dataclass(frozen=True)
class TauSeries:
    taus: tuple
    nvars: int = 2

    def __post_init__(self):
        object.__setattr__(self, "taus", tuple(self.taus))
        if self.nvars < 1:
            raise ValueError("nvars must be >= 1")

    def as_poly(self) -> SparsePoly:
        out = SparsePoly(self.nvars)
        for j, tau in enumerate(self.taus):
            if tau:
                out = out + esp_poly(j, self.nvars) * tau
        return out

    def shifted(self, shift: int, points) -> np.ndarray:
        pts = _points(points, self.nvars)
        taus = np.asarray(self.taus, dtype=float)
        if shift >= len(taus):
            return np.zeros(pts.shape[0])
        lad = esp_ladder(pts, len(taus) - 1 - shift)
        return lad @ taus[shift:]


@dataclass(frozen=True)
class Spectral:
    nodes: tuple  # ((lam, f), ...)
    nvars: int = 2

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple((float(a), float(b)) for a, b in self.nodes))

    def exponent_coeffs(self, lam: float) -> np.ndarray:
        return lam ** np.arange(1, self.nvars + 1)

    def shifted(self, shift: int, points) -> np.ndarray:
        pts = _points(points, self.nvars)
        out = np.zeros(pts.shape[0])
        for lam, f in self.nodes:
            out += f * lam**shift * np.exp(pts @ self.exponent_coeffs(lam))
        return out


WSolution = Union[TauSeries, Spectral]


def _points(points, nvars):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != nvars:
        raise ValueError(f"points must have {nvars} coordinates, got {pts.shape[1]}")
    return pts


@dataclass(frozen=True)
class DerivativeLadder:
    point: tuple
    values: tuple = field(default=())  # values[k-1] = A_k

    def __getitem__(self, k):
        if not 1 <= k <= len(self.values):
            raise IndexError(f"ladder holds A_1..A_{len(self.values)}, not A_{k}")
        return self.values[k - 1]


def w_eval(W: WSolution, point) -> float:
    return float(W.shifted(0, point)[0])


def w_partial(W: WSolution, k: int, point) -> float:
    """``d^k W / du_1^k`` at ``point``."""
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    return float(W.shifted(k, point)[0])


def w_partial_many(W: WSolution, k: int, points) -> np.ndarray:
    return W.shifted(k, points)


def w_mixed(W: WSolution, multi_index, point) -> float:
    """Mixed partial ``prod_l d^{a_l}/du_l^{a_l}`` via the hierarchy shift."""
    shift = sum((l + 1) * a for l, a in enumerate(multi_index))
    return w_partial(W, shift, point)


def w_ladder(W: WSolution, point, kmax: int) -> DerivativeLadder:
    vals = tuple(w_partial(W, k, point) for k in range(1, kmax + 1))
    return DerivativeLadder(tuple(float(x) for x in point), vals)


def heat_residual(W, grid) -> float:
    """Max over ``m = 2..N`` and the grid of ``|dW/du_m - d^m W/du_1^m|``.

    ``W`` may also be a bare ``SparsePoly`` (e.g. a corrupted candidate), in
    which case both sides come from symbolic differentiation.
    """
    if isinstance(W, TauSeries):
        W = W.as_poly()
    if isinstance(W, SparsePoly):
        pts = _points(grid, W.nvars)
        worst = 0.0
        for m in range(2, W.nvars + 1):
            r = W.diff(m - 1) - W.diff(0, m)
            if r:
                worst = max(worst, float(np.max(np.abs(r.evaluate_many(pts)))))
        return worst
    if isinstance(W, Spectral):
        pts = _points(grid, W.nvars)
        worst = 0.0
        for m in range(2, W.nvars + 1):
            lhs = np.zeros(pts.shape[0])
            rhs = np.zeros(pts.shape[0])
            for lam, f in W.nodes:
                e = f * np.exp(pts @ W.exponent_coeffs(lam))
                lhs += W.exponent_coeffs(lam)[m - 1] * e  # coefficient of u_m
                d = e
                for _ in range(m):
                    d = lam * d  # one u_1 derivative
                rhs += d
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst
    raise TypeError(f"unsupported W type {type(W).__name__}")


def deform(W: WSolution, nvars: int) -> WSolution:
    """Extend an N=2 solution to ``nvars`` variables, agreeing on u_3 = ... = 0."""
    if nvars <= W.nvars:
        raise ValueError("target dimension must exceed the current one")
    if isinstance(W, TauSeries):
        return TauSeries(W.taus, nvars)
    return Spectral(W.nodes, nvars)


def recenter(W: TauSeries, point) -> TauSeries:
    """Re-expand ``W`` around ``point``: the returned series ``W'`` satisfies
    ``W'(y) = W(point + y)``, via ``P_j(a + b) = sum_m P_{j-m}(a) P_m(b)``."""
    lad = esp_ladder(np.asarray(point, dtype=float)[None, :], max(len(W.taus) - 1, 0))[0]
    taus = W.taus
    new = []
    for m in range(len(taus)):
        new.append(float(sum(taus[j] * lad[j - m] for j in range(m, len(taus)))))
    return TauSeries(tuple(new), W.nvars)
