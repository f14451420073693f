"""Polygonal curves in 3-space: exact linking numbers, the six-point linked-triangles check, and a K6 drawing with a prescribed linking number.

The linking number lk(c1, c2) is the signed number of times c2 passes through
the triangle fan coned from a vertex of c1 over the edges of c1.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, Sequence

from gmpy2 import mpq

from .errors import CannotRoute, CyclesIntersect, DegenerateConfiguration, NotGenericCone
from .geometry import Point3, collinear3, det3, pt3, sign


def _as3(p) -> Point3:
    return p if isinstance(p, Point3) else pt3(*p)


class ClosedPolyline3:
    """Closed polyline in space; consecutive duplicate points are dropped."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = []
        for p in points:
            p = _as3(p)
            if not pts or pts[-1] != p:
                pts.append(p)
        while len(pts) > 1 and pts[-1] == pts[0]:
            pts.pop()
        if len(pts) < 3:
            raise ValueError("a closed polyline in space needs at least three points")
        self.points = tuple(pts)

    def segments(self) -> list:
        p = self.points
        return list(zip(p, p[1:] + p[:1]))

    def reversed(self) -> "ClosedPolyline3":
        return ClosedPolyline3(self.points[::-1])

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"ClosedPolyline3({len(self.points)} points)"


def _cross3(u, v) -> Point3:
    return Point3(u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x)


def _drop_axis(normal) -> int:
    comps = [abs(normal.x), abs(normal.y), abs(normal.z)]
    return comps.index(max(comps))


def _proj(p, axis) -> tuple:
    return (p.y, p.z) if axis == 0 else (p.x, p.z) if axis == 1 else (p.x, p.y)


def _orient2(a, b, c) -> int:
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _on_seg2(p, a, b) -> bool:
    return (
        _orient2(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segs_meet2(a, b, c, d) -> bool:
    d1, d2 = _orient2(a, b, c), _orient2(a, b, d)
    d3, d4 = _orient2(c, d, a), _orient2(c, d, b)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return _on_seg2(c, a, b) or _on_seg2(d, a, b) or _on_seg2(a, c, d) or _on_seg2(b, c, d)


def segments_meet3(s1, s2) -> bool:
    """Closed-segment intersection test in space."""
    A, B = s1
    C, D = s2
    for i in range(3):
        if max(A[i], B[i]) < min(C[i], D[i]) or max(C[i], D[i]) < min(A[i], B[i]):
            return False
    if det3(A, B, C, D) != 0:
        return False
    n = _cross3(B - A, C - A)
    if n == (0, 0, 0):
        n = _cross3(B - A, D - A)
    if n == (0, 0, 0):
        n = _cross3(D - C, A - C)
    if n == (0, 0, 0):
        # all four points collinear: compare along the axis of largest extent
        ext = [abs(B[i] - A[i]) + abs(D[i] - C[i]) for i in range(3)]
        i = ext.index(max(ext))
        return max(min(A[i], B[i]), min(C[i], D[i])) <= min(max(A[i], B[i]), max(C[i], D[i]))
    ax = _drop_axis(n)
    return _segs_meet2(_proj(A, ax), _proj(B, ax), _proj(C, ax), _proj(D, ax))


def _meet_beyond_shared(s1, s2, shared) -> bool:
    """For segments sharing the endpoint ``shared``: do they have another common point?"""
    a = s1[0] if s1[1] == shared else s1[1]
    b = s2[0] if s2[1] == shared else s2[1]
    u, v = a - shared, b - shared
    if _cross3(u, v) != (0, 0, 0):
        return False
    return u.x * v.x + u.y * v.y + u.z * v.z > 0


def polylines_disjoint3(segs1, segs2) -> bool:
    return not any(segments_meet3(a, b) for a in segs1 for b in segs2)


def _point_in_triangle_coplanar(p, P, Q, R) -> bool:
    n = _cross3(Q - P, R - P)
    ax = _drop_axis(n)
    p2, a, b, c = _proj(p, ax), _proj(P, ax), _proj(Q, ax), _proj(R, ax)
    o1, o2, o3 = _orient2(a, b, p2), _orient2(b, c, p2), _orient2(c, a, p2)
    return not ((o1 < 0 or o2 < 0 or o3 < 0) and (o1 > 0 or o2 > 0 or o3 > 0))


def triangle_crossing(P, Q, R, U, V) -> int:
    """Signed crossing of segment UV with the open triangle PQR; raises NotGenericCone on any contact with its boundary or plane."""
    dU = det3(P, Q, R, U)
    dV = det3(P, Q, R, V)
    sU, sV = sign(dU), sign(dV)
    if sU * sV > 0:
        return 0
    if sU == 0 and sV == 0:
        if segments_meet3((U, V), (P, Q)) or segments_meet3((U, V), (Q, R)) or segments_meet3((U, V), (R, P)):
            raise NotGenericCone("segment lies in the plane of a fan triangle and touches it")
        if _point_in_triangle_coplanar(U, P, Q, R):
            raise NotGenericCone("segment lies inside a fan triangle")
        return 0
    if sU == 0 or sV == 0:
        X = U if sU == 0 else V
        if _point_in_triangle_coplanar(X, P, Q, R):
            raise NotGenericCone("a vertex of the second curve lies on the fan")
        return 0
    s1 = sign(det3(U, V, P, Q))
    s2 = sign(det3(U, V, Q, R))
    s3 = sign(det3(U, V, R, P))
    if s1 == s2 == s3 != 0:
        return sV
    nonzero = {s for s in (s1, s2, s3) if s != 0}
    if len(nonzero) <= 1 and 0 in (s1, s2, s3):
        raise NotGenericCone("segment passes through the boundary of a fan triangle")
    return 0


def _fan_count(c1: ClosedPolyline3, apex_index: int, c2: ClosedPolyline3) -> int:
    pts = c1.points
    m = len(pts)
    P = pts[apex_index]
    total = 0
    segs2 = c2.segments()
    for k in range(m):
        Q, R = pts[k], pts[(k + 1) % m]
        if P in (Q, R):
            continue
        if collinear3(P, Q, R):
            # a flat triangle adds no area, but the curve must stay off its spokes
            if any(segments_meet3(s, (P, Q)) or segments_meet3(s, (P, R)) for s in segs2):
                raise NotGenericCone("second curve meets a flat fan triangle")
            continue
        for U, V in segs2:
            total += triangle_crossing(P, Q, R, U, V)
    return total


def linking_number(c1, c2, apex: int | None = None) -> int:
    """Exact linking number of two disjoint closed polylines in space.

    With ``apex`` given, only the fan from that vertex of ``c1`` is used;
    otherwise vertices of ``c1``, then of ``c2``, are tried until a fan is
    generic.
    """
    c1 = c1 if isinstance(c1, ClosedPolyline3) else ClosedPolyline3(c1)
    c2 = c2 if isinstance(c2, ClosedPolyline3) else ClosedPolyline3(c2)
    if not polylines_disjoint3(c1.segments(), c2.segments()):
        raise CyclesIntersect("the closed polylines intersect")
    if apex is not None:
        return _fan_count(c1, apex, c2)
    for i in range(len(c1.points)):
        try:
            return _fan_count(c1, i, c2)
        except NotGenericCone:
            continue
    # linking number is symmetric, so fans from the second curve work as well
    for i in range(len(c2.points)):
        try:
            return _fan_count(c2, i, c1)
        except NotGenericCone:
            continue
    raise NotGenericCone("no vertex of either curve gives a generic fan")


def linking_numbers_all_apexes(c1, c2) -> list:
    """lk computed from every apex whose fan is generic (all entries agree)."""
    c1 = c1 if isinstance(c1, ClosedPolyline3) else ClosedPolyline3(c1)
    out = []
    for i in range(len(c1.points)):
        try:
            out.append(linking_number(c1, c2, apex=i))
        except (NotGenericCone, CyclesIntersect):
            pass
    return out


# -- six points and K6 drawings ----------------------------------------------------


def triangle_partitions(labels=(1, 2, 3, 4, 5, 6)) -> list:
    """The 10 splits of six labels into two triples, the first triple holding the smallest label."""
    first = labels[0]
    out = []
    for pair in combinations(labels[1:], 2):
        T1 = (first,) + pair
        T2 = tuple(x for x in labels if x not in T1)
        out.append((T1, T2))
    return out


def no_four_coplanar(points: Sequence) -> bool:
    pts = [_as3(p) for p in points]
    return all(det3(*q) != 0 for q in combinations(pts, 4))


@dataclass
class CGSReport:
    values: dict  # (T1, T2) -> lk

    @property
    def odd_pairs(self) -> list:
        return [k for k, v in sorted(self.values.items()) if v % 2]

    @property
    def parity_sum(self) -> int:
        return sum(self.values.values()) % 2


def cgs_check(points: Sequence) -> CGSReport:
    """Linking numbers of all 10 pairs of disjoint triangles on six points in general position."""
    pts = [_as3(p) for p in points]
    if len(pts) != 6:
        raise DegenerateConfiguration("need exactly six points")
    if not no_four_coplanar(pts):
        raise DegenerateConfiguration("four of the points are coplanar")
    values = {}
    for T1, T2 in triangle_partitions():
        c1 = ClosedPolyline3([pts[i - 1] for i in T1])
        c2 = ClosedPolyline3([pts[i - 1] for i in T2])
        values[(T1, T2)] = linking_number(c1, c2)
    return CGSReport(values)


def moment_curve_points(ts=(1, 2, 3, 4, 5, 6)) -> list:
    return [pt3(t, t * t, t * t * t) for t in ts]


class SpatialK6Drawing:
    """Six vertex images in space and a polyline for each of the 15 edges (stored from smaller to larger label)."""

    def __init__(self, vertices: Mapping, paths: Mapping | None = None):
        self.vertices = {v: _as3(vertices[v]) for v in range(1, 7)}
        self.paths = {}
        paths = dict(paths or {})
        for u, v in combinations(range(1, 7), 2):
            if (u, v) in paths:
                pts = [_as3(p) for p in paths[(u, v)]]
            elif (v, u) in paths:
                pts = [_as3(p) for p in paths[(v, u)]][::-1]
            else:
                pts = [self.vertices[u], self.vertices[v]]
            if pts[0] != self.vertices[u] or pts[-1] != self.vertices[v]:
                raise ValueError(f"path of edge {u}-{v} does not join its vertex images")
            self.paths[(u, v)] = tuple(pts)

    def edge_path(self, u, v) -> tuple:
        return self.paths[(u, v)] if u < v else self.paths[(v, u)][::-1]

    def cycle(self, seq) -> ClosedPolyline3:
        pts = []
        for u, v in zip(seq, tuple(seq[1:]) + tuple(seq[:1])):
            pts.extend(self.edge_path(u, v)[:-1])
        return ClosedPolyline3(pts)

    def linking_table(self) -> dict:
        return {(T1, T2): linking_number(self.cycle(T1), self.cycle(T2)) for T1, T2 in triangle_partitions()}

    def is_almost_embedding(self) -> bool:
        """Images of nonadjacent edges are disjoint, no path meets itself, and adjacent paths share only their common vertex."""
        segs = {e: list(zip(p, p[1:])) for e, p in self.paths.items()}
        for e, ss in segs.items():
            for i in range(len(ss)):
                for j in range(i + 1, len(ss)):
                    if j == i + 1:
                        if _meet_beyond_shared(ss[i], ss[j], ss[i][1]):
                            return False
                    elif segments_meet3(ss[i], ss[j]):
                        return False
        for e1, e2 in combinations(sorted(segs), 2):
            shared = set(e1) & set(e2)
            if not shared:
                if not polylines_disjoint3(segs[e1], segs[e2]):
                    return False
                continue
            q = self.vertices[shared.pop()]
            for a in segs[e1]:
                for b in segs[e2]:
                    if q in a and q in b:
                        if _meet_beyond_shared(a, b, q):
                            return False
                    elif segments_meet3(a, b):
                        return False
        return True


# -- the construction with a prescribed odd linking number -------------------------


def _linf3(v) -> mpq:
    return max(abs(v.x), abs(v.y), abs(v.z))


def _coil(G0: Point3, G1: Point3, turns: int, radius, pitch, at=mpq(1, 2)) -> list:
    """Square helix of ``turns`` signed turns around the segment G0G1, starting near the point at parameter ``at``."""
    d = G1 - G0
    dn = d.scale(1 / _linf3(d))
    # a generic reference axis keeps the ring corners out of special planes
    a = _cross3(dn, pt3(3, 5, 7))
    if a == (0, 0, 0):
        a = _cross3(dn, pt3(7, -3, 2))
    a = a.scale(radius / _linf3(a))
    b = _cross3(dn, a)
    b = b.scale(radius / _linf3(b))
    M = G0 + d.scale(at)
    ring = [a, b, a.scale(-1), b.scale(-1)] if turns >= 0 else [a, b.scale(-1), a.scale(-1), b]
    pts = []
    for j in range(4 * abs(turns) + 1):
        pts.append(M + dn.scale(pitch * mpq(j, 4)) + ring[j % 4])
    return pts


def _base_moment_drawing():
    """Straight drawing on the moment curve, mirrored if needed so that its unique odd pair links +1 times."""
    pts = moment_curve_points()
    V = {i + 1: p for i, p in enumerate(pts)}
    f = SpatialK6Drawing(V)
    table = f.linking_table()
    odd = [k for k, val in table.items() if val % 2]
    if len(odd) != 1:
        raise DegenerateConfiguration("moment-curve drawing does not have a unique odd pair")
    if table[odd[0]] < 0:
        V = {k: pt3(p.x, p.y, -p.z) for k, p in V.items()}
        f = SpatialK6Drawing(V)
    return f, odd[0]


def _lasso_route(V: Mapping, e: tuple, coils: Sequence, radius, pitch) -> list:
    """Path of edge e = (u, v) with a thin lasso per (g, turns) entry, each coiling around edge g.

    A lasso leaves e at a base point, runs to the coil, and comes back to a
    point just after the base point, so with zero turns it bounds a thin
    strip and changes no linking number.
    """
    u, v = e
    U, W = V[u], V[v]
    d = W - U
    k = len(coils)
    step = mpq(1, 1000 * (k + 1))
    pts = [U]
    for i, (g, turns) in enumerate(coils):
        t = mpq(7 * i + 2, 7 * k + 3)
        pts.append(U + d.scale(t))
        pts.extend(_coil(V[g[0]], V[g[1]], turns, radius, pitch))
        pts.append(U + d.scale(t + step))
    pts.append(W)
    return pts


def _drawing_with_lassos(V: Mapping, moves: Mapping, radius, pitch) -> SpatialK6Drawing:
    """``moves`` maps an edge e to its list of (g, turns) lassos."""
    return SpatialK6Drawing(V, {e: _lasso_route(V, e, coils, radius, pitch) for e, coils in moves.items()})


def _unit_effects(V: Mapping, base_table: dict, radius, pitch) -> dict:
    """Measured change of all ten linking numbers caused by one lasso turn of e around each disjoint edge g."""
    edges = list(combinations(range(1, 7), 2))
    effects = {}
    for e in edges:
        for g in edges:
            if set(e) & set(g) or g < e:
                continue
            f = _drawing_with_lassos(V, {e: [(g, 1)]}, radius, pitch)
            table = f.linking_table()
            effects[(e, g)] = {k: table[k] - base_table[k] for k in table if table[k] != base_table[k]}
    return effects


def _doubling_combination(effects: dict, pair) -> list:
    """Up to three signed unit moves whose effects add up to exactly +2 on ``pair`` and 0 elsewhere."""
    names = sorted(effects)
    for size in (1, 2, 3):
        for chosen in combinations(names, size):
            for signs in product((1, -1), repeat=size):
                total = {}
                for m, s in zip(chosen, signs):
                    for k, val in effects[m].items():
                        total[k] = total.get(k, 0) + s * val
                total = {k: val for k, val in total.items() if val}
                if total == {pair: 2}:
                    return list(zip(chosen, signs))
    return []


def gen_example_8_2a(n: int, max_attempts: int = 8) -> tuple:
    """A drawing of K6 in space whose designated pair of triangles links 2n + 1 times and the other nine pairs not at all.

    Returns ``(drawing, designated_pair)``. The straight moment-curve drawing
    (mirrored if needed) has exactly one linked pair, with lk = 1. Lassos of
    edges coiling around disjoint edges shift two linking numbers by one
    each; a combination that shifts only the designated pair by 2 is found
    from measured unit effects, applied n times, and the result re-verified.
    """
    base, pair = _base_moment_drawing()
    V = base.vertices
    base_table = base.linking_table()
    target = {k: 0 for k in triangle_partitions()}
    target[pair] = 2 * n + 1
    if n == 0:
        return base, pair
    radius, pitch = mpq(1, 8), mpq(1, 8)
    for _ in range(max_attempts):
        try:
            effects = _unit_effects(V, base_table, radius, pitch)
        except (NotGenericCone, CyclesIntersect):
            radius, pitch = radius / 2, pitch / 2
            continue
        combo = _doubling_combination(effects, pair)
        if not combo:
            raise CannotRoute("no combination of unit lassos doubles the designated pair")
        moves = {}
        for (e, g), s in combo:
            moves.setdefault(e, []).append((g, s * n))
        f = _drawing_with_lassos(V, moves, radius, pitch)
        try:
            if f.is_almost_embedding() and f.linking_table() == target:
                return f, pair
        except (NotGenericCone, CyclesIntersect):
            pass
        radius, pitch = radius / 2, pitch / 2
    raise CannotRoute("lasso placement failed at every scale tried")


__all__ = [
    "ClosedPolyline3", "segments_meet3", "linking_number", "linking_numbers_all_apexes",
    "triangle_crossing", "triangle_partitions", "no_four_coplanar", "CGSReport", "cgs_check",
    "moment_curve_points", "SpatialK6Drawing", "gen_example_8_2a",
]
