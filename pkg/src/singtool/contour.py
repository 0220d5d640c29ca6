"""Zero-set tracing on a rectangle: marching squares + per-edge bisection."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels

BISECTION_ITERS = 50


@dataclass
class ZeroSetTrace:
    rectangle: tuple
    resolution: int
    polylines: list = field(default_factory=list)
    max_residual: float = 0.0

    @property
    def empty(self) -> bool:
        return not self.polylines

    def vertices(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros((0, 2))
        return np.concatenate(self.polylines, axis=0)


def grid_axes(rectangle, resolution):
    u0, u1, v0, v1 = rectangle
    return np.linspace(u0, u1, resolution), np.linspace(v0, v1, resolution)


def trace_zero_set(fn, rectangle, resolution: int) -> ZeroSetTrace:
    """Polylines approximating ``{fn = 0}``; ``fn`` maps an ``(m, 2)`` array of
    points to ``m`` values. ``resolution`` is the node count per axis."""
    us, vs = grid_axes(rectangle, resolution)
    nx, ny = len(us), len(vs)
    U, V = np.meshgrid(us, vs)  # rows follow v, columns follow u
    nodes = np.column_stack([U.ravel(), V.ravel()])
    vals = np.asarray(fn(nodes), dtype=float).reshape(ny, nx)
    cu = 0.5 * (us[:-1] + us[1:])
    cv = 0.5 * (vs[:-1] + vs[1:])
    CU, CV = np.meshgrid(cu, cv)
    centers = np.asarray(fn(np.column_stack([CU.ravel(), CV.ravel()])), dtype=float)
    centers = centers.reshape(ny - 1, nx - 1)

    segs = kernels.marching_segments(vals, centers)
    trace = ZeroSetTrace(tuple(rectangle), resolution)
    if len(segs) == 0:
        return trace

    edge_ids = np.unique(segs.ravel())
    node = edge_ids // 2
    vertical = edge_ids % 2 == 1
    i0, j0 = node // nx, node % nx
    i1 = np.where(vertical, i0 + 1, i0)
    j1 = np.where(vertical, j0, j0 + 1)
    pa = np.column_stack([us[j0], vs[i0]])
    pb = np.column_stack([us[j1], vs[i1]])
    fa = vals[i0, j0].copy()
    fb = vals[i1, j1].copy()
    sa = fa >= 0
    for _ in range(BISECTION_ITERS):
        mid = 0.5 * (pa + pb)
        fm = np.asarray(fn(mid), dtype=float)
        same = (fm >= 0) == sa
        pa = np.where(same[:, None], mid, pa)
        fa = np.where(same, fm, fa)
        pb = np.where(same[:, None], pb, mid)
        fb = np.where(same, fb, fm)
    pick_a = np.abs(fa) <= np.abs(fb)
    pts = np.where(pick_a[:, None], pa, pb)
    resid = np.where(pick_a, np.abs(fa), np.abs(fb))
    trace.max_residual = float(resid.max())
    where = {int(e): k for k, e in enumerate(edge_ids)}

    adj = {}
    for a, b in segs:
        a, b = int(a), int(b)
        if a == b:
            continue
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen_edges = set()

    def walk(start):
        chain = [start]
        prev, cur = None, start
        while True:
            nxt = None
            for cand in adj[cur]:
                key = (min(cur, cand), max(cur, cand))
                if key in seen_edges:
                    continue
                nxt = cand
                seen_edges.add(key)
                break
            if nxt is None:
                return chain
            chain.append(nxt)
            prev, cur = cur, nxt
            if cur == start:
                return chain

    starts = sorted(e for e, nb in adj.items() if len(nb) % 2 == 1)
    starts += sorted(e for e in adj if e not in starts)
    for s in starts:
        while any((min(s, c), max(s, c)) not in seen_edges for c in adj[s]):
            chain = walk(s)
            line = pts[[where[e] for e in chain]]
            # drop consecutive duplicates (crossings that landed on a shared node)
            keep = np.ones(len(line), dtype=bool)
            keep[1:] = np.any(np.abs(np.diff(line, axis=0)) > 0, axis=1)
            trace.polylines.append(line[keep])
    return trace
