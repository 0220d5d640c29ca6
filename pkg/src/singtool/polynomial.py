"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as ``{exponent tuple: coefficient}``. Integer and ``Fraction``
coefficients stay exact through every operation; float coefficients are
accepted (e.g. a tau-series with measured parameters) and simply propagate as
floats.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from numbers import Number

import numpy as np


def _coerce(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)) and not isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, (float, np.floating)):
        return float(c)
    if isinstance(c, Number):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class SparsePoly:
    """Polynomial in ``nvars`` variables.

    >>> u, v = SparsePoly.variables(2)
    >>> (u * u / 2 + v).terms == {(2, 0): Fraction(1, 2), (0, 1): Fraction(1)}
    True
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent tuple {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _coerce(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, index):
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def variables(cls, nvars):
        return tuple(cls.variable(nvars, i) for i in range(nvars))

    def _wrap(self, other):
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different numbers of variables")
            return other
        return SparsePoly.constant(self.nvars, other)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = _coerce(other)
            return SparsePoly(self.nvars, {e: a * c for e, a in self.terms.items()})
        other = self._wrap(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SparsePoly):
            raise TypeError("polynomial division is not supported")
        c = _coerce(other)
        inv = 1 / c if isinstance(c, float) else Fraction(1) / c
        return self * inv

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = SparsePoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, Number):
            return self == SparsePoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # calculus -----------------------------------------------------------
    def diff(self, var: int, times: int = 1) -> "SparsePoly":
        out = {}
        for e, c in self.terms.items():
            if e[var] < times:
                continue
            k = e[var]
            factor = factorial(k) // factorial(k - times)
            ne = list(e)
            ne[var] = k - times
            out[tuple(ne)] = c * factor
        return SparsePoly(self.nvars, out)

    # evaluation ---------------------------------------------------------
    def __call__(self, point) -> float:
        return float(self.evaluate(point, exact=False))

    def evaluate(self, point, exact=True):
        """Evaluate at ``point``; with ``exact`` the inputs are converted to
        ``Fraction`` first (floats convert without rounding)."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        if exact:
            xs = [Fraction(x) for x in point]
            total = Fraction(0)
        else:
            xs = [float(x) for x in point]
            total = 0.0
        for e, c in self.terms.items():
            term = c if exact else float(c)
            for x, k in zip(xs, e):
                if k:
                    term = term * x**k
            total += term
        return total

    def evaluate_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        pts = pts.reshape(-1, self.nvars)
        out = np.zeros(pts.shape[0])
        for e, c in self.terms.items():
            term = np.full(pts.shape[0], float(c))
            for i, k in enumerate(e):
                if k:
                    term = term * pts[:, i] ** k
            out += term
        return out

    # structure ----------------------------------------------------------
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self, weights) -> int:
        return max((sum(w * k for w, k in zip(weights, e)) for e in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def extend(self, nvars: int) -> "SparsePoly":
        """Same polynomial viewed in ``nvars >= self.nvars`` variables."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the variable count")
        pad = (0,) * (nvars - self.nvars)
        return SparsePoly(nvars, {e + pad: c for e, c in self.terms.items()})

    def substitute(self, var: int, value) -> "SparsePoly":
        """Replace variable ``var`` by a polynomial (same ``nvars``) or a number."""
        if not isinstance(value, SparsePoly):
            value = SparsePoly.constant(self.nvars, value)
        powers = {}
        out = SparsePoly(self.nvars)
        for e, c in self.terms.items():
            k = e[var]
            if k not in powers:
                powers[k] = value**k
            ne = list(e)
            ne[var] = 0
            out = out + powers[k] * SparsePoly(self.nvars, {tuple(ne): c})
        return out

    def restrict(self, assignment: dict) -> "SparsePoly":
        """Fix some variables to numbers, keeping ``nvars`` unchanged."""
        out = self
        for var, value in assignment.items():
            out = out.substitute(var, value)
        return out

    def select(self, keep) -> "SparsePoly":
        """Project onto the variables in ``keep``; all others must be absent."""
        keep = list(keep)
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise ValueError("polynomial depends on a dropped variable")
            out[tuple(e[i] for i in keep)] = c
        return SparsePoly(len(keep), out)

    def taylor_shift(self, point, order=None) -> "SparsePoly":
        """Coefficients of ``p(point + d)`` as a polynomial in ``d``, optionally
        truncated to total degree ``order``."""
        out = {}
        pt = list(point)
        for e, c in self.terms.items():
            # expand prod_i (p_i + d_i)^{e_i}
            partial = {(): c}
            for i, k in enumerate(e):
                nxt = {}
                for pre, val in partial.items():
                    for m in range(k + 1):
                        if order is not None and sum(pre) + m > order:
                            break
                        coef = comb(k, m) * (pt[i] ** (k - m) if k - m else 1)
                        key = pre + (m,)
                        nxt[key] = nxt.get(key, 0) + val * coef
                partial = nxt
            for key, val in partial.items():
                out[key] = out.get(key, 0) + val
        return SparsePoly(self.nvars, out)

    def truncate(self, order: int) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= order})

    def univariate(self, var: int) -> list:
        """Coefficients (lowest power first) of ``self`` as a polynomial in
        ``var`` over the ring of polynomials in the remaining variables."""
        deg = self.degree_in(var)
        coeffs = [SparsePoly(self.nvars) for _ in range(deg + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[var]
            ne[var] = 0
            coeffs[k] = coeffs[k] + SparsePoly(self.nvars, {tuple(ne): c})
        return coeffs

    # display ------------------------------------------------------------
    def to_string(self, names=None) -> str:
        if names is None:
            names = ["u"] if self.nvars == 1 else [f"u{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            cs = str(c)
            if mono:
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {self.to_string()})"
