"""JSON formats for polylines, planar drawings and spatial drawings.

Coordinates are written as rational strings ("3/7", "-2") so a file
reloads to exactly the drawing that was saved.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InvalidDrawing
from .geometry import Q, format_q, pt, pt3
from .graph import Graph, GraphDrawing
from .space3 import ClosedPolyline3, SpatialK6Drawing
from .winding import ClosedPolyline, Polyline


def point_to_json(p) -> list:
    return [format_q(c) for c in p]


def point_from_json(raw):
    if not isinstance(raw, (list, tuple)) or len(raw) not in (2, 3):
        raise InvalidDrawing(f"bad point {raw!r}")
    for c in raw:
        if isinstance(c, float):
            raise InvalidDrawing(f"coordinate {c!r} must be an integer or a 'p/q' string")
    try:
        coords = [Q(c) for c in raw]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidDrawing(f"bad coordinate in {raw!r}: {exc}") from None
    return pt(*coords) if len(coords) == 2 else pt3(*coords)


def polyline_to_json(l: Polyline) -> dict:
    return {"closed": isinstance(l, ClosedPolyline), "points": [point_to_json(p) for p in l.points]}


def polyline_from_json(raw: dict) -> Polyline:
    pts = [point_from_json(p) for p in raw["points"]]
    return ClosedPolyline(pts) if raw.get("closed") else Polyline(pts)


def polylines_doc(named: dict) -> dict:
    """A document {"polylines": {name: {"closed": ..., "points": ...}}} with names kept in insertion order."""
    return {"polylines": {k: polyline_to_json(v) for k, v in named.items()}}


def drawing_to_dict(f: GraphDrawing) -> dict:
    return {
        "graph": {"n": f.graph.n, "edges": [list(e) for e in f.graph.edges]},
        "vertices": {str(v): point_to_json(f.vertices[v]) for v in f.graph.vertices},
        "edgePaths": [
            {"edge": list(e), "path": [point_to_json(p) for p in f.paths[e].points]} for e in f.graph.edges
        ],
    }


def drawing_from_dict(doc: dict) -> GraphDrawing:
    try:
        g = doc["graph"]
        graph = Graph(int(g["n"]), [tuple(int(x) for x in e) for e in g["edges"]])
        verts = {int(k): point_from_json(v) for k, v in doc["vertices"].items()}
        paths = {}
        for item in doc.get("edgePaths", []):
            u, v = (int(x) for x in item["edge"])
            if (u, v) in paths or (v, u) in paths:
                raise InvalidDrawing(f"edge {u}-{v} listed twice")
            paths[(u, v)] = [point_from_json(p) for p in item["path"]]
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidDrawing(f"malformed drawing document: {exc!r}") from None
    return GraphDrawing(graph, verts, paths)


def spatial_to_dict(f: SpatialK6Drawing) -> dict:
    return {
        "graph": {"n": 6, "edges": [list(e) for e in sorted(f.paths)]},
        "vertices": {str(v): point_to_json(f.vertices[v]) for v in sorted(f.vertices)},
        "edgePaths": [{"edge": list(e), "path": [point_to_json(p) for p in f.paths[e]]} for e in sorted(f.paths)],
    }


def spatial_from_dict(doc: dict) -> SpatialK6Drawing:
    try:
        verts = {int(k): point_from_json(v) for k, v in doc["vertices"].items()}
        paths = {tuple(int(x) for x in item["edge"]): [point_from_json(p) for p in item["path"]]
                 for item in doc.get("edgePaths", [])}
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidDrawing(f"malformed spatial drawing: {exc!r}") from None
    if sorted(verts) != [1, 2, 3, 4, 5, 6]:
        raise InvalidDrawing("a spatial K6 drawing needs vertices 1..6")
    return SpatialK6Drawing(verts, paths)


def curves3_from_dict(doc: dict) -> list:
    """Closed spatial curves from {"curves": [[[x, y, z], ...], ...]}."""
    try:
        return [ClosedPolyline3([point_from_json(p) for p in c]) for c in doc["curves"]]
    except (KeyError, TypeError) as exc:
        raise InvalidDrawing(f"malformed curve document: {exc!r}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidDrawing(f"{path}: not valid JSON ({exc})") from None


def save_drawing(f: GraphDrawing, path) -> None:
    Path(path).write_text(dumps(drawing_to_dict(f)))


def load_drawing(path) -> GraphDrawing:
    return drawing_from_dict(load_json(path))


__all__ = [
    "point_to_json", "point_from_json", "polyline_to_json", "polyline_from_json", "polylines_doc",
    "drawing_to_dict", "drawing_from_dict", "spatial_to_dict", "spatial_from_dict",
    "curves3_from_dict", "dumps", "load_json", "save_drawing", "load_drawing",
]
