"""Quick invariant suites behind ``singtool verify``."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classifier as cl
from . import hyperbolic as hy
from . import kernels
from . import parabolic as pm
from . import regularize as rg
from .heat import TauSeries, deform, heat_residual, recenter
from .schur import esp_eval, esp_poly, factor_esp, hermite_roots


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float


def _rng():
    return np.random.default_rng(20240613)


def _schur():
    rng = _rng()
    pts = rng.uniform(-2, 2, size=(20, 4))
    worst = 0.0
    for j in range(0, 16):
        p = esp_poly(j, 4)
        for x in pts:
            exact = float(p.evaluate([Fraction(float(c)) for c in x]))
            worst = max(worst, abs(esp_eval(j, x) - exact) / max(1.0, abs(exact)))
    yield "esp_recurrence_vs_exact", worst <= 1e-12, f"max rel err {worst:.2e}"
    c = factor_esp(2).parabola_coeffs
    yield "factor_k2", len(c) == 1 and abs(c[0] - 2) < 1e-12, str(c)
    r = hermite_roots(3).roots
    yield "hermite_h3", abs(r[2] - 1.224744871391589) < 1e-12 and r[1] == 0.0, str(r)
    # derivative shift dP_j/du_l = P_{j-l}
    ok = all(esp_poly(j, 3).diff(l) == esp_poly(j - l - 1, 3) for j in range(8) for l in range(3))
    yield "derivative_shift", ok, "j<8, l<=3"


def _heat():
    rng = _rng()
    W = TauSeries(tuple(rng.normal(size=9)), 3)
    grid = rng.uniform(-1, 1, size=(10, 3))
    res = heat_residual(W, grid)
    yield "tau_heat_residual", res <= 1e-10, f"{res:.2e}"
    W2 = TauSeries(tuple(rng.normal(size=8)), 2)
    p = rng.uniform(-1, 1, 2)
    W3 = recenter(W2, p)
    q = rng.uniform(-0.5, 0.5, 2)
    d = abs(W3.shifted(0, q)[0] - W2.shifted(0, p + q)[0])
    yield "recenter", d <= 1e-10, f"{d:.2e}"


def _parabolic():
    rng = _rng()
    W = TauSeries(tuple(rng.normal(size=9)), 2)
    F = pm.jordan_plane_map(W)
    worst = 0.0
    for p in rng.uniform(-1, 1, size=(10, 2)):
        worst = max(worst, abs(F.jacobian(p) - pm.jordan_jacobian(W, p)))
    yield "jacobian_identity", worst <= 1e-10, f"{worst:.2e}"
    lad = pm.jordan_whitney(pm.normal_form_solution(2), (0.0, 0.0), 3)
    yield "impediment_P5", np.allclose(lad, [2.0, 0.0]), str(lad)
    tr = pm.trace_singular_curve(pm.normal_form_solution(2), (-2, 2, -2, 2), 41)
    v = tr.vertices()
    err = float(np.max(np.abs(v[:, 0] ** 2 / 2 + v[:, 1])))
    yield "trace_P5_parabola", err <= 1e-6, f"{err:.2e}"


def _classify():
    for k in range(0, 7):
        nf = cl.normal_form(k)
        ok = nf.jacobian() == esp_poly(k, 2) * esp_poly(k, 2)
        if not ok:
            break
    yield "normal_form_jacobian", ok, "k<=6"
    br = cl.image_curve(2, 0)
    yield "image_k2", (br.B, br.C) == (Fraction(-1, 3), Fraction(1, 4)), f"{br.B}, {br.C}"
    g, d = cl.scaling_exponents_fit(pm.normal_form_solution(3), (0.0, 0.0))
    yield "scaling_k3", abs(g - 4) <= 0.05 and abs(d - 5) <= 0.05, f"{g:.3f}, {d:.3f}"
    rot = [cl.tangent_rotation(k).value for k in (2, 3)]
    yield "cusp_parity", rot == ["continuous", "pi_flip"], str(rot)


def _regularize():
    ok = all(rg.triangular_chain(k) for k in range(1, 7))
    yield "triangular_chain", ok, "k<=6"
    rng = _rng()
    W = deform(TauSeries((0, 0, 0, 0.05, 1.0) + tuple(0.3 * rng.normal(size=4)), 2), 3)
    worst = 0.0
    for chart in rng.uniform(-0.4, 0.4, size=(10, 2)):
        sp_ = rg.solve_surface_point(W, chart, [0.0])
        jb = rg.jacobian_block(W, sp_.point)
        worst = max(worst, abs(jb.det - jb.expected) / max(1e-300, abs(jb.expected)))
    yield "rank_law", worst <= 1e-8, f"{worst:.2e}"
    pr = rg.partial_regularization(2, 3)
    pair = (pr.t.to_string(), pr.x.to_string())
    yield "fold_k2_N3", pair == ("u2", "1/2*u1^2"), str(pair)


def _hyperbolic():
    for n in range(1, 4):
        m = hy.manufactured_model(n)
        v = hy.hyp_classify(m, (0.0, 0.0))
        lad = hy.hyp_whitney_ladder(m, (0.0, 0.0), n)
        ok = v.order == n and hy.first_nonvanishing(lad) == n
        if not ok:
            break
    yield "gradation", ok, "n<=3"
    wn = hy.weakly_nonlinear_probe("r**2", "s", "-s", "r")
    yield "weakly_nonlinear", wn.ok, f"{wn.max_error:.2e}"


def _kernels():
    rng = _rng()
    pts = rng.uniform(-2, 2, size=(50, 3))
    a = kernels.esp_ladder_numpy(pts, 12)
    b = kernels.esp_ladder(pts, 12)
    d = float(np.max(np.abs(a - b)))
    yield "esp_ladder_backends", d <= 1e-12, f"backend={kernels.BACKEND} diff={d:.1e}"


SUITES = {
    "schur": _schur,
    "heat": _heat,
    "parabolic": _parabolic,
    "classify": _classify,
    "regularize": _regularize,
    "hyperbolic": _hyperbolic,
    "kernels": _kernels,
}


def run(suite=None):
    names = list(SUITES) if suite is None else [suite]
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
    results = []
    for name in names:
        gen = SUITES[name]()
        while True:
            t0 = time.perf_counter()
            try:
                check, ok, detail = next(gen)
            except StopIteration:
                break
            except Exception as exc:  # a crashing invariant is a failed one
                results.append(CheckResult(name, "<error>", False, repr(exc),
                                           time.perf_counter() - t0))
                break
            results.append(CheckResult(name, check, bool(ok), detail, time.perf_counter() - t0))
    return results
