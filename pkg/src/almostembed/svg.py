"""SVG 1.1 rendering of planar drawings and named polylines.

Coordinates are converted to floats for display only. The y axis is flipped
so the picture matches the usual mathematical orientation.
"""
from __future__ import annotations

from typing import Mapping
from xml.sax.saxutils import escape

from .graph import GraphDrawing
from .winding import ClosedPolyline, Polyline

MARGIN = 0.05
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def view_box(points) -> tuple:
    """(min_x, min_y, width, height) in SVG coordinates, with a 5% margin on every side."""
    xs = [float(p.x) for p in points]
    ys = [-float(p.y) for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w, h = x1 - x0, y1 - y0
    side = max(w, h) or 1.0
    w, h = (w or side), (h or side)
    if x1 == x0:
        x0 -= w / 2
    if y1 == y0:
        y0 -= h / 2
    return x0 - MARGIN * w, y0 - MARGIN * h, w * (1 + 2 * MARGIN), h * (1 + 2 * MARGIN)


def _coords(points) -> str:
    return " ".join(f"{_fmt(float(p.x))},{_fmt(-float(p.y))}" for p in points)


def _middle_arrow(points, colour: str, stroke: float) -> str:
    """A short segment with an arrowhead at the middle of the polyline, pointing along it."""
    segs = list(zip(points, points[1:]))
    a, b = segs[len(segs) // 2]
    ax, ay, bx, by = float(a.x), -float(a.y), float(b.x), -float(b.y)
    mx, my = (ax + bx) / 2, (ay + by) / 2
    return (
        f'<line x1="{_fmt(ax + (mx - ax) * 0.8)}" y1="{_fmt(ay + (my - ay) * 0.8)}" '
        f'x2="{_fmt(mx)}" y2="{_fmt(my)}" stroke="{colour}" stroke-width="{_fmt(stroke)}" '
        f'marker-end="url(#arrow)"/>'
    )


def _document(box, body: list) -> str:
    x, y, w, h = box
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{_fmt(x)} {_fmt(y)} {_fmt(w)} {_fmt(h)}" '
        f'width="600" height="{_fmt(600 * h / w)}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" '
        'orient="auto" markerUnits="strokeWidth"><path d="M0,0 L10,5 L0,10 z" fill="#333333"/></marker>',
        "</defs>",
        f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" fill="white"/>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def drawing_svg(f: GraphDrawing, title: str | None = None) -> str:
    """Vertices as dots labelled by their number, edges as polylines with a direction arrow from the smaller label."""
    box = view_box(f.all_points())
    size = max(box[2], box[3])
    stroke, radius, font = size / 400, size / 120, size / 30
    body = []
    if title:
        body.append(f"<title>{escape(title)}</title>")
    for k, e in enumerate(f.graph.edges):
        colour = PALETTE[k % len(PALETTE)]
        pts = f.paths[e].points
        body.append(
            f'<polyline id="edge-{e[0]}-{e[1]}" points="{_coords(pts)}" fill="none" stroke="{colour}" '
            f'stroke-width="{_fmt(stroke)}" stroke-linejoin="round"/>'
        )
        body.append(_middle_arrow(pts, colour, stroke))
    for v in f.graph.vertices:
        p = f.vertices[v]
        x, y = float(p.x), -float(p.y)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="black"/>')
        body.append(
            f'<text x="{_fmt(x + 1.5 * radius)}" y="{_fmt(y - 1.5 * radius)}" font-size="{_fmt(font)}" '
            f'font-family="sans-serif">{v}</text>'
        )
    return _document(box, body)


def polylines_svg(named: Mapping[str, Polyline], points: Mapping | None = None) -> str:
    """Named polylines (closed ones drawn closed) and optional named marker points."""
    pts = [p for l in named.values() for p in l.points] + list((points or {}).values())
    box = view_box(pts)
    size = max(box[2], box[3])
    stroke, radius, font = size / 400, size / 120, size / 30
    body = []
    for k, (name, l) in enumerate(named.items()):
        colour = PALETTE[k % len(PALETTE)]
        seq = list(l.points) + (list(l.points[:1]) if isinstance(l, ClosedPolyline) else [])
        if len(seq) < 2:
            continue
        body.append(
            f'<polyline id="{escape(name)}" points="{_coords(seq)}" fill="none" stroke="{colour}" '
            f'stroke-width="{_fmt(stroke)}"/>'
        )
        body.append(_middle_arrow(seq, colour, stroke))
    for name, p in (points or {}).items():
        x, y = float(p.x), -float(p.y)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="black"/>')
        body.append(f'<text x="{_fmt(x + 1.5 * radius)}" y="{_fmt(y - 1.5 * radius)}" font-size="{_fmt(font)}" '
                    f'font-family="sans-serif">{escape(name)}</text>')
    return _document(box, body)


__all__ = ["drawing_svg", "polylines_svg", "view_box", "MARGIN"]
