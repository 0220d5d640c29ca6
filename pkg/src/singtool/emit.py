"""Deterministic CSV, SVG and JSON writers."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

GRID_HEADER = ("u", "v", "t", "x", "J")
CURVE_HEADER = ("branch", "param", "u", "v", "t", "x")
SURFACE_HEADER = ("u1", "u2", "u3", "level")


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    x = float(x)
    if x == 0.0:
        return "0"  # folds -0.0
    return f"{x:.12g}"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def _finite(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ValueError(f"non-finite number {obj!r} in report")
    if isinstance(obj, dict):
        return {str(k): _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, np.generic):
        return _finite(obj.item())
    return obj


def json_text(obj) -> str:
    return json.dumps(_finite(obj), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# SVG: panels of polylines, each panel scaled to its own data box


class Panel:
    def __init__(self, title: str = ""):
        self.title = title
        self.paths = []  # (points array (m, 2), stroke)

    def add(self, pts, stroke="#000"):
        pts = np.asarray(pts, dtype=float)
        pts = pts[np.all(np.isfinite(pts), axis=1)] if len(pts) else pts
        if len(pts) >= 2:
            self.paths.append((pts, stroke))

    def bounds(self):
        if not self.paths:
            return (0.0, 1.0, 0.0, 1.0)
        allp = np.vstack([p for p, _ in self.paths])
        x0, y0 = allp.min(axis=0)
        x1, y1 = allp.max(axis=0)
        if x1 - x0 < 1e-12:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 - y0 < 1e-12:
            y0, y1 = y0 - 0.5, y1 + 0.5
        return (x0, x1, y0, y1)


def svg_text(panels, size: int = 320, pad: int = 12) -> str:
    width = size * len(panels)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{size}" '
        f'viewBox="0 0 {width} {size}">'
    ]
    inner = size - 2 * pad
    for i, panel in enumerate(panels):
        x0, x1, y0, y1 = panel.bounds()
        ox = i * size + pad
        out.append(f'<g id="panel{i}">')
        out.append(f'<rect x="{ox}" y="{pad}" width="{inner}" height="{inner}" '
                   f'fill="none" stroke="#ccc"/>')
        for pts, stroke in panel.paths:
            px = ox + (pts[:, 0] - x0) / (x1 - x0) * inner
            py = pad + (1.0 - (pts[:, 1] - y0) / (y1 - y0)) * inner
            coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
            out.append(f'<polyline fill="none" stroke="{stroke}" stroke-width="0.8" '
                       f'points="{coords}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
