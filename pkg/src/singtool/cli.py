"""singtool command line: figures, tables and reports for the hodograph maps."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np
import sympy as sp

from . import __version__
from . import classifier as cl
from . import config as cfgmod
from . import emit
from . import hyperbolic as hy
from . import parabolic as pm
from . import regularize as rg
from . import verify as vf
from .contour import trace_zero_set
from .errors import ConfigError, SingtoolError
from .heat import heat_residual
from .schur import esp_poly

MAX_K = 12
DEFAULT_SLICES = (0.0, 0.1, -0.1, 2.0, -2.0, 4.0, -4.0)


def _region(text):
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse {text!r}", "region") from exc
    if len(vals) != 4:
        raise ConfigError("expected u0,u1,v0,v1", "region")
    return vals


def _check_k(k, lo=0):
    if not lo <= k <= MAX_K:
        raise ConfigError(f"k must lie in [{lo}, {MAX_K}]", "k")


def _grid_panel(rows, resolution, title):
    panel = emit.Panel(title)
    if len(rows):
        g = rows.reshape(resolution, resolution, 5)
        for i in range(resolution):
            panel.add(g[i, :, 2:4], "#1f4e79")  # constant v
            panel.add(g[:, i, 2:4], "#9c3d10")  # constant u
    return panel


def _write(out, name, text, written):
    written.append(str(emit.write_text(Path(out) / name, text)))


# ---------------------------------------------------------------------------


def cmd_normal_form(k, region, resolution, out):
    _check_k(k)
    rows = pm.image_grid(pm.normal_form_solution(k), region, resolution)
    written = []
    _write(out, f"normal_form_k{k}.csv", emit.csv_text(emit.GRID_HEADER, rows), written)
    panel = _grid_panel(rows, resolution, f"k={k}")
    _write(out, f"normal_form_k{k}.svg", emit.svg_text([panel]), written)
    return written


def _branch_label(b):
    return "line" if b == "line" else f"parabola{b}"


def singular_curve_data(k, n_samples=81):
    loc = cl.singular_locus(k)
    rows, branches = [], []
    params = np.linspace(-2.0, 2.0, n_samples)
    for b in loc.branches():
        br = cl.image_curve(k, b, params)
        label = _branch_label(b)
        for p, u, v, t, x in br.samples:
            rows.append((label, p, u, v, t, x))
        info = {"branch": label, "B": float(br.B), "C": float(br.C),
                "B_exact": str(br.B), "C_exact": str(br.C)}
        if b == "line":
            info.update(c=None, rotation=None)
        else:
            info.update(c=float(br.c), rotation=cl.tangent_rotation(k, b).value)
        branches.append(info)
    return rows, branches


def cmd_singular_curves(k, out):
    _check_k(k, lo=1)
    rows, branches = singular_curve_data(k)
    written = []
    _write(out, f"singular_curves_k{k}.csv", emit.csv_text(emit.CURVE_HEADER, rows), written)
    left, right = emit.Panel("locus"), emit.Panel("image")
    for info in branches:
        pts = np.array([r[2:] for r in rows if r[0] == info["branch"]], dtype=float)
        left.add(pts[:, 0:2])
        right.add(pts[:, 2:4])
    _write(out, f"singular_curves_k{k}.svg", emit.svg_text([left, right]), written)
    doc = {"command": "singular-curves", "k": k, "branches": branches,
           "exponents": {"gamma": k + 1, "delta": k + 2}}
    _write(out, f"singular_curves_k{k}.json", emit.json_text(doc), written)
    return written


def cmd_regularize(k, slices, out, resolution=81):
    _check_k(k, lo=1)
    chart = rg.regularize_normal_form(k)
    # the restricted hypersurface in (u1, u2, u3): P_k = 0
    poly = esp_poly(k, 3)
    rows, panels = [], []
    for idx, c in enumerate(slices):
        tr = trace_zero_set(
            lambda pts, c=c: poly.evaluate_many(np.column_stack([pts, np.full(len(pts), c)])),
            (-2.0, 2.0, -2.0, 2.0), resolution)
        panel = emit.Panel(f"u3={c}")
        for line in tr.polylines:
            panel.add(line)
            rows.extend((a, b, c, idx) for a, b in line)
        panels.append(panel)
    written = []
    _write(out, f"regularize_k{k}.csv", emit.csv_text(emit.SURFACE_HEADER, rows), written)
    _write(out, f"regularize_k{k}.svg", emit.svg_text(panels), written)
    doc = {
        "command": "regularize",
        "k": k,
        "N": chart.N,
        "potential": chart.potential.to_string(),
        "surface_equations": [e.to_string() for e in chart.surface_equations],
        "chart": [f"u{k + 1}", f"u{k + 2}"],
        "slices": list(slices),
        "checks": [{"name": "triangular_chain", "pass": rg.triangular_chain(k)}],
    }
    _write(out, f"regularize_k{k}.json", emit.json_text(doc), written)
    return written


def _need_w(cfg, nvars=2):
    if cfg.w is None:
        raise ConfigError("this command needs a W specification", "w")
    if nvars is not None and cfg.w.nvars != nvars:
        raise ConfigError(f"expected nvars = {nvars}", "w.nvars")
    return cfg.w.build()


def _point(cfg, n=2):
    p = cfg.point or (0.0,) * n
    if len(p) != n:
        raise ConfigError(f"expected {n} coordinates", "point")
    return tuple(float(x) for x in p)


def classify_report(cfg):
    W = _need_w(cfg)
    p = _point(cfg)
    rep = cl.classify(W, p, cfg.tol, cfg.kmax)
    k = rep.order
    checks = []
    fit = None
    for direction in ((1.0, 1.0), (1.0, -1.0), (1.0, 0.5), (0.7, 1.3)):
        try:
            fit = cl.scaling_exponents_fit(W, p, direction, tol=cfg.tol)
            break
        except SingtoolError:
            continue
    if fit is None:
        checks.append({"name": "exponent_fit", "pass": False, "value": None})
        fit = (None, None)
    else:
        checks.append({"name": "gamma_fit", "pass": abs(fit[0] - (k + 1)) <= 0.05,
                       "value": fit[0]})
        checks.append({"name": "delta_fit", "pass": abs(fit[1] - (k + 2)) <= 0.05,
                       "value": fit[1]})
    grid = np.array(p) + 0.25 * np.array([[-1, -1], [-1, 1], [1, -1], [1, 1], [0, 0]])
    res = heat_residual(W, grid)
    checks.append({"name": "heat_residual", "pass": res <= 1e-8, "value": res})
    F = pm.jordan_plane_map(W)
    jerr = abs(F.jacobian(p) - pm.jordan_jacobian(W, p))
    checks.append({"name": "jacobian_identity", "pass": jerr <= 1e-10, "value": jerr})
    loc = {"line": False, "parabolas": []}
    if rep.locus is not None:
        loc = {"line": rep.locus.linear_factor, "parabolas": list(rep.locus.parabola_coeffs)}
    return {
        "command": "classify",
        "config_hash": cfg.config_hash(),
        "config": cfg.to_dict(),
        "version": __version__,
        "point": list(p),
        "order": k,
        "ladder": list(rep.ladder),
        "locus": loc,
        "exponents": {"gamma": k + 1, "delta": k + 2, "gamma_fit": fit[0], "delta_fit": fit[1]},
        "checks": checks,
    }


def cmd_map_grid(cfg):
    W = _need_w(cfg)
    rows = pm.image_grid(W, cfg.region, cfg.resolution)
    out = cfg.out or "."
    written = []
    if "csv" in cfg.formats:
        _write(out, "map_grid.csv", emit.csv_text(emit.GRID_HEADER, rows), written)
    if "svg" in cfg.formats:
        panel = _grid_panel(rows, cfg.resolution, "map")
        _write(out, "map_grid.svg", emit.svg_text([panel]), written)
    doc = {"command": "map-grid", "config_hash": cfg.config_hash(), "config": cfg.to_dict(),
           "rows": int(len(rows)), "files": written}
    return doc


def hyperbolic_report(cfg):
    if cfg.model is None:
        raise ConfigError("this command needs a model {R, S, t}", "model")
    try:
        model = hy.HyperbolicModel(cfg.model.R, cfg.model.S, cfg.model.t)
    except (sp.SympifyError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc), "model") from exc
    points = cfg.points or (tuple(cfg.point) if cfg.point else (0.0, 0.0),)
    u0, u1, v0, v1 = cfg.region
    gr, gs = np.meshgrid(np.linspace(u0, u1, 9), np.linspace(v0, v1, 9))
    grid = np.column_stack([gr.ravel(), gs.ravel()])
    checks, verdicts = [], []
    try:
        res = hy.hyp_residual(model, grid)
        checks.append({"name": "compatibility_residual", "pass": res <= 1e-8, "value": res})
    except hy.TransitionLine as exc:
        checks.append({"name": "compatibility_residual", "pass": False, "value": None,
                       "detail": str(exc)})
    for p in points:
        p = tuple(float(c) for c in p)
        entry = {"point": list(p)}
        try:
            v = hy.hyp_classify(model, p, nmax=cfg.kmax)
        except SingtoolError as exc:
            entry.update(kind="degenerate", order=None, detail=str(exc))
            verdicts.append(entry)
            continue
        entry.update(kind=v.kind, order=v.order, variable=v.variable)
        if v.kind != "transition_line":
            lad = hy.hyp_whitney_ladder(model, p, v.order)
            first = hy.first_nonvanishing(lad)
            R = model.value(model.R, p)
            entry["ladder"] = lad.tolist()
            entry["first_nonvanishing"] = first
            ok = first == v.order
            if first:
                err = hy.direction_error(lad[first - 1], R)
                entry["direction_error"] = err
                ok = ok and err <= 1e-6
            checks.append({"name": f"gradation@{list(p)}", "pass": bool(ok)})
        verdicts.append(entry)
    return {"command": "hyperbolic", "config_hash": cfg.config_hash(),
            "config": cfg.to_dict(), "verdicts": verdicts, "checks": checks}


def _emit_report(doc, cfg, name):
    text = emit.json_text(doc)
    if cfg.out:
        emit.write_text(Path(cfg.out) / name, text)
    sys.stdout.write(text)
    return 0 if all(c["pass"] for c in doc.get("checks", [])) else 1


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="singtool", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-form", help="image grids of the order-k normal form")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--region", default="-2,2,-2,2")
    p.add_argument("--res", type=int, default=41)
    p.add_argument("--out", default=".")

    p = sub.add_parser("singular-curves", help="singular locus and its image")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=".")

    p = sub.add_parser("regularize", help="slices of the regularizing hypersurface")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--slices", default=",".join(str(s) for s in DEFAULT_SLICES))
    p.add_argument("--out", default=".")

    for name in ("classify", "map-grid", "hyperbolic"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=sorted(vf.SUITES))
    return ap


def _load(path, command):
    cfg = cfgmod.load(path)
    if cfg.command != command:
        raise ConfigError(f"config is for {cfg.command!r}, not {command!r}", "command")
    return cfg


def run(args) -> int:
    if args.command == "normal-form":
        if args.res < 2:
            raise ConfigError("must be >= 2", "res")
        files = cmd_normal_form(args.k, _region(args.region), args.res, args.out)
    elif args.command == "singular-curves":
        files = cmd_singular_curves(args.k, args.out)
    elif args.command == "regularize":
        try:
            slices = tuple(float(x) for x in args.slices.split(","))
        except ValueError as exc:
            raise ConfigError(f"cannot parse {args.slices!r}", "slices") from exc
        files = cmd_regularize(args.k, slices, args.out)
    elif args.command == "classify":
        cfg = _load(args.config, "classify")
        return _emit_report(classify_report(cfg), cfg, "classify.json")
    elif args.command == "map-grid":
        cfg = _load(args.config, "map-grid")
        return _emit_report(cmd_map_grid(cfg), cfg, "map_grid.json")
    elif args.command == "hyperbolic":
        cfg = _load(args.config, "hyperbolic")
        return _emit_report(hyperbolic_report(cfg), cfg, "hyperbolic.json")
    else:
        results = vf.run(args.suite)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}.{r.name} ({r.seconds:.3f}s) {r.detail}")
        return 0 if all(r.passed for r in results) else 1
    for f in files:
        print(f)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except SingtoolError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
