"""Independent reference computations used by the tests.

Nothing here calls the recurrence or root finder under test.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, sqrt


def esp_series_oracle(point, jmax):
    """Exact ``P_0..P_jmax`` at a rational point from the product of series
    ``prod_l exp(z^l u_l) = prod_l sum_m u_l^m z^{lm} / m!``."""
    u = [Fraction(c) for c in point]
    series = [Fraction(0)] * (jmax + 1)
    series[0] = Fraction(1)
    for l, ul in enumerate(u, start=1):
        factor = [Fraction(0)] * (jmax + 1)
        m = 0
        while l * m <= jmax:
            factor[l * m] = ul**m / factorial(m)
            m += 1
        out = [Fraction(0)] * (jmax + 1)
        for i, a in enumerate(series):
            if a:
                for j in range(0, jmax + 1 - i, l):
                    if factor[j]:
                        out[i + j] += a * factor[j]
        series = out
    return series


def esp_two_var_closed(j, u, v):
    """``P_j(u, v) = sum_m u^{j-2m} v^m / ((j-2m)! m!)``."""
    return sum(u ** (j - 2 * m) * v**m / (factorial(j - 2 * m) * factorial(m)) for m in range(j // 2 + 1))


HERMITE_ROOTS = {
    2: (-1 / sqrt(2), 1 / sqrt(2)),
    3: (-sqrt(1.5), 0.0, sqrt(1.5)),
}


def fd_jacobian(fn, p, h=1e-6):
    """Central-difference 2x2 Jacobian of ``fn: (u, v) -> (t, x)``."""
    import numpy as np

    p = np.asarray(p, dtype=float)
    cols = []
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        a = np.asarray(fn(p + e))
        b = np.asarray(fn(p - e))
        cols.append((a - b) / (2 * h))
    return np.column_stack(cols)
