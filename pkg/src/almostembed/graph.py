"""Graphs, piecewise linear drawings of graphs in the plane, and their validation.

Vertices are the integers 1..n. Each edge ``{u, v}`` is stored once with
``u < v`` and its polyline runs from the image of ``u`` to the image of
``v``; reading it as ``(v, u)`` gives the reversed polyline.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping

from .errors import EndpointMismatch, InvalidDrawing, NotACycle, NotGeneralPosition
from .geometry import (
    CrossingKind,
    Point2,
    orientation,
    point_on_polyline_points,
    pt,
    segment_crossing,
)
from .winding import ClosedPolyline, Polyline


def _edge_key(u: int, v: int) -> tuple:
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple graph on vertices 1..n."""

    __slots__ = ("n", "edges", "_edge_set")

    def __init__(self, n: int, edges: Iterable):
        n = int(n)
        if n < 0:
            raise InvalidDrawing("vertex count must be non-negative")
        keys = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidDrawing(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidDrawing(f"edge {u}-{v} uses a vertex outside 1..{n}")
            k = _edge_key(u, v)
            if k in keys:
                raise InvalidDrawing(f"duplicate edge {k}")
            keys.add(k)
        self.n = n
        self.edges = tuple(sorted(keys))
        self._edge_set = frozenset(keys)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(1, n + 1), 2))

    @classmethod
    def complete_bipartite(cls, m: int, k: int) -> "Graph":
        """K_{m,k} with parts 1..m and m+1..m+k."""
        return cls(m + k, [(a, b) for a in range(1, m + 1) for b in range(m + 1, m + k + 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, i % n + 1) for i in range(1, n + 1)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """Star with leaves 1..k and centre k+1."""
        c = leaves + 1
        return cls(c, [(i, c) for i in range(1, leaves + 1)])

    def minus_edge(self, u: int, v: int) -> "Graph":
        k = _edge_key(u, v)
        if k not in self._edge_set:
            raise InvalidDrawing(f"{k} is not an edge")
        return Graph(self.n, [e for e in self.edges if e != k])

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge_key(u, v) in self._edge_set

    def neighbors(self, v: int) -> list:
        return sorted({b if a == v else a for a, b in self.edges if v in (a, b)})

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


class GraphDrawing:
    """A drawing f: K -> R^2 given by vertex images and one polyline per edge.

    ``paths`` maps edges to point sequences; any edge left out is drawn as a
    straight segment. Paths may be given in either direction and are stored
    from the smaller endpoint to the larger one.
    """

    __slots__ = ("graph", "vertices", "paths")

    def __init__(self, graph: Graph, vertices: Mapping, paths: Mapping | None = None):
        self.graph = graph
        verts = {}
        for v in graph.vertices:
            if v not in vertices:
                raise InvalidDrawing(f"vertex {v} has no image")
            p = vertices[v]
            verts[v] = p if isinstance(p, Point2) else pt(*p)
        self.vertices = verts
        stored = {}
        paths = dict(paths or {})
        for (u, v) in graph.edges:
            a, b = verts[u], verts[v]
            if (u, v) in paths:
                poly = paths.pop((u, v))
                poly = poly if isinstance(poly, Polyline) else Polyline(poly)
            elif (v, u) in paths:
                poly = paths.pop((v, u))
                poly = (poly if isinstance(poly, Polyline) else Polyline(poly)).reversed()
            else:
                poly = Polyline([a, b])
            if type(poly) is not Polyline:
                poly = Polyline(poly.points)
            if poly.start != a or poly.end != b:
                raise EndpointMismatch(f"path of edge {u}-{v} does not join the vertex images")
            stored[(u, v)] = poly
        if paths:
            raise InvalidDrawing(f"paths given for non-edges {sorted(paths)}")
        self.paths = stored

    def edge_path(self, u: int, v: int) -> Polyline:
        """The polyline f|uv, oriented from f(u) to f(v)."""
        if u < v:
            poly = self.paths.get((u, v))
            if poly is None:
                raise NotACycle(f"{u}-{v} is not an edge")
            return poly
        poly = self.paths.get((v, u))
        if poly is None:
            raise NotACycle(f"{u}-{v} is not an edge")
        return poly.reversed()

    def with_edge_path(self, u: int, v: int, points) -> "GraphDrawing":
        paths = dict(self.paths)
        poly = points if isinstance(points, Polyline) else Polyline(points)
        if u > v:
            u, v, poly = v, u, poly.reversed()
        paths[(u, v)] = poly
        return GraphDrawing(self.graph, self.vertices, paths)

    def relabel(self, sigma: Mapping) -> "GraphDrawing":
        """The composite g = f o sigma: g(v) = f(sigma(v)) and g|uv = f|sigma(u)sigma(v)."""
        inv = {sigma[v]: v for v in self.graph.vertices}
        if sorted(inv) != list(self.graph.vertices):
            raise InvalidDrawing("relabeling is not a permutation of the vertices")
        edges = [(inv[a], inv[b]) for a, b in self.graph.edges]
        verts = {v: self.vertices[sigma[v]] for v in self.graph.vertices}
        paths = {(u, v): self.edge_path(sigma[u], sigma[v]) for u, v in edges}
        return GraphDrawing(Graph(self.graph.n, edges), verts, paths)

    @classmethod
    def straight(cls, graph: Graph, vertices: Mapping) -> "GraphDrawing":
        return cls(graph, vertices)

    def all_points(self) -> list:
        pts = list(self.vertices.values())
        for poly in self.paths.values():
            pts.extend(poly.points[1:-1])
        return pts

    def __eq__(self, other):
        return (
            isinstance(other, GraphDrawing)
            and self.graph == other.graph
            and self.vertices == other.vertices
            and self.paths == other.paths
        )

    def __repr__(self):
        return f"GraphDrawing({self.graph!r}, {len(self.all_points())} points)"


def _walk(f: GraphDrawing, seq, closed: bool) -> list:
    seq = [int(v) for v in seq]
    if len(set(seq)) != len(seq):
        raise NotACycle(f"repeated vertex in {seq}")
    steps = list(zip(seq, seq[1:] + seq[:1])) if closed else list(zip(seq, seq[1:]))
    pts = [f.vertices[seq[0]]]
    for u, v in steps:
        if not f.graph.has_edge(u, v):
            raise NotACycle(f"{u}-{v} is not an edge of the graph")
        pts.extend(f.edge_path(u, v).points[1:])
    return pts


def restrict_path(f: GraphDrawing, seq) -> Polyline:
    """f restricted to the oriented path v_1 ... v_k."""
    if len(seq) < 2:
        raise NotACycle("a path needs at least two vertices")
    return Polyline(_walk(f, seq, closed=False))


def restrict_cycle(f: GraphDrawing, seq) -> ClosedPolyline:
    """f restricted to the oriented cycle v_1 ... v_k: the closed polyline f|v1v2 ... f|vkv1."""
    if len(seq) < 3:
        raise NotACycle("a cycle needs at least three vertices")
    return ClosedPolyline(_walk(f, seq, closed=True)[:-1])


class Grade(Enum):
    ALMOST_EMBEDDING = "AlmostEmbedding"
    WEAK_ALMOST_EMBEDDING = "WeakAlmostEmbedding"
    GENERAL_POSITION_ONLY = "GeneralPositionOnly"
    INVALID = "Invalid"

    def at_least_weak(self) -> bool:
        return self in (Grade.ALMOST_EMBEDDING, Grade.WEAK_ALMOST_EMBEDDING)


@dataclass
class ValidationResult:
    grade: Grade
    violations: list = field(default_factory=list)
    general_position: bool = False

    @property
    def is_almost_embedding(self) -> bool:
        return self.grade is Grade.ALMOST_EMBEDDING


def _bbox(points) -> tuple:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def _boxes_meet(a, b) -> bool:
    return not (a[2] < b[0] or b[2] < a[0] or a[3] < b[1] or b[3] < a[1])


def _point_in_box(p, box) -> bool:
    return box[0] <= p.x <= box[2] and box[1] <= p.y <= box[3]


def polylines_meet(p1: Polyline, p2: Polyline):
    """A common point of two open polylines, or None."""
    s2 = p2.segments()
    if len(p1.points) == 1 or len(p2.points) == 1:
        if len(p1.points) == 1:
            q, other = p1.points[0], p2.points
        else:
            q, other = p2.points[0], p1.points
        return q if point_on_polyline_points(q, other) else None
    boxes2 = [_bbox(s) for s in s2]
    for a in p1.segments():
        box = _bbox(a)
        for b, bb in zip(s2, boxes2):
            if not _boxes_meet(box, bb):
                continue
            c = segment_crossing(a, b)
            if c.kind is not CrossingKind.DISJOINT:
                return c.point
    return None


def edge_vertex_conflicts(f: GraphDrawing, edge: tuple) -> list:
    """Vertices not on ``edge`` whose image lies on f(edge)."""
    u, v = edge
    poly = f.paths[edge]
    box = _bbox(poly.points)
    out = []
    for w in f.graph.vertices:
        if w in (u, v):
            continue
        q = f.vertices[w]
        if _point_in_box(q, box) and point_on_polyline_points(q, poly.points):
            out.append(((w,), edge, q))
    return out


def edge_edge_conflicts(f: GraphDrawing, edge: tuple) -> list:
    """Edges nonadjacent to ``edge`` whose image meets f(edge)."""
    poly = f.paths[edge]
    box = _bbox(poly.points)
    out = []
    for other in f.graph.edges:
        if set(other) & set(edge):
            continue
        op = f.paths[other]
        if not _boxes_meet(box, _bbox(op.points)):
            continue
        w = polylines_meet(poly, op)
        if w is not None:
            a, b = sorted([edge, other])
            out.append((a, b, w))
    return out


def validate(f: GraphDrawing) -> ValidationResult:
    """Grade a drawing exactly and list every failed pair of nonadjacent simplices.

    Each violation is ``(simplexA, simplexB, witness)`` where a simplex is a
    tuple of vertices. A vertex image lying on an adjacent edge is allowed.
    """
    g = f.graph
    vertex_edge = []
    for e in g.edges:
        vertex_edge.extend(edge_vertex_conflicts(f, e))
    vertex_vertex = []
    for a, b in combinations(g.vertices, 2):
        if f.vertices[a] == f.vertices[b]:
            vertex_vertex.append(((a,), (b,), f.vertices[a]))
    edge_edge = []
    for i, e in enumerate(g.edges):
        for e2 in g.edges[i + 1:]:
            if set(e) & set(e2):
                continue
            w = polylines_meet(f.paths[e], f.paths[e2])
            if w is not None:
                edge_edge.append((e, e2, w))
    violations = sorted(vertex_edge + vertex_vertex + edge_edge)
    gp = is_general_position(f).ok
    if not violations:
        grade = Grade.ALMOST_EMBEDDING
    elif not vertex_edge:
        grade = Grade.WEAK_ALMOST_EMBEDDING
    elif gp:
        grade = Grade.GENERAL_POSITION_ONLY
    else:
        grade = Grade.INVALID
    return ValidationResult(grade, violations, gp)


@dataclass
class GeneralPositionReport:
    ok: bool
    issues: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _tagged_segments(f: GraphDrawing) -> list:
    segs = []
    for e in f.graph.edges:
        for k, s in enumerate(f.paths[e].segments()):
            segs.append((e, k, s))
    return segs


def is_general_position(f: GraphDrawing, first_only: bool = False) -> GeneralPositionReport:
    """Check that all polyline vertices are distinct and every meeting of segments is a simple transversal crossing.

    Two segments that share an endpoint (consecutive bends, or edges at a
    common graph vertex) must not be collinear; any other pair must be
    disjoint or cross transversally, and no crossing point may be shared by
    two different pairs.
    """
    issues = []
    seen = {}
    for p in f.all_points():
        if p in seen:
            issues.append(("repeated point", p))
            if first_only:
                return GeneralPositionReport(False, issues)
        seen[p] = True
    segs = _tagged_segments(f)
    boxes = [_bbox(s) for _, _, s in segs]
    crossings = {}
    for i in range(len(segs)):
        e1, k1, s1 = segs[i]
        b1 = boxes[i]
        for j in range(i + 1, len(segs)):
            if not _boxes_meet(b1, boxes[j]):
                continue
            e2, k2, s2 = segs[j]
            shared = set(s1) & set(s2)
            if shared:
                q = shared.pop()
                a = s1[0] if s1[1] == q else s1[1]
                b = s2[0] if s2[1] == q else s2[1]
                if orientation(q, a, b) == 0 or set(s1) == set(s2):
                    issues.append(("collinear neighbours", (e1, k1), (e2, k2)))
                    if first_only:
                        return GeneralPositionReport(False, issues)
                continue
            c = segment_crossing(s1, s2)
            if c.kind is CrossingKind.DISJOINT:
                continue
            if c.kind is CrossingKind.DEGENERATE:
                issues.append(("touching segments", (e1, k1), (e2, k2), c.point))
                if first_only:
                    return GeneralPositionReport(False, issues)
                continue
            if c.point in crossings:
                issues.append(("multiple crossing", c.point))
                if first_only:
                    return GeneralPositionReport(False, issues)
            crossings[c.point] = True
    return GeneralPositionReport(not issues, issues)


def crossing_number_V(f: GraphDrawing) -> int:
    """Number of crossing points between images of nonadjacent edges."""
    report = is_general_position(f, first_only=True)
    if not report.ok:
        raise NotGeneralPosition(f"drawing is not in general position: {report.issues[0]}")
    total = 0
    g = f.graph
    for i, e in enumerate(g.edges):
        for e2 in g.edges[i + 1:]:
            if set(e) & set(e2):
                continue
            for a in f.paths[e].segments():
                for b in f.paths[e2].segments():
                    if segment_crossing(a, b).kind is CrossingKind.TRANSVERSAL:
                        total += 1
    return total


__all__ = [
    "Graph", "GraphDrawing", "restrict_path", "restrict_cycle", "Grade", "ValidationResult",
    "validate", "is_general_position", "GeneralPositionReport", "crossing_number_V",
    "polylines_meet", "edge_vertex_conflicts", "edge_edge_conflicts",
]
