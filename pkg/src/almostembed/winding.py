"""Polylines, winding numbers and signed crossings.

A polyline here is an ordered vertex list, not a point set: ``ABCABC`` and
``ABC`` cover the same triangle but wind twice and once. Integer quantities
(winding numbers, crossing sums) are computed exactly; the partial winding
``winding_fraction`` is a float oracle used only for cross-checks.
"""
from __future__ import annotations

import math
from itertools import count
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import EndpointMismatch, NotGeneralPosition, PointOnPolyline, RoundingGuard
from .geometry import (
    CrossingKind,
    Point2,
    oriented_angle,
    point_on_polyline_points,
    segment_crossing,
    sign,
)

TWO_PI = 2 * math.pi
ORACLE_TOLERANCE = 1e-6


def _as_point(p) -> Point2:
    if isinstance(p, Point2):
        return p
    from .geometry import pt

    return pt(*p)


def _dedupe(points: Sequence[Point2]) -> tuple:
    out = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    return tuple(out)


class Polyline:
    """Open polyline A_1 ... A_m with m >= 1; consecutive duplicates are dropped."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable):
        pts = _dedupe([_as_point(p) for p in points])
        if not pts:
            raise ValueError("a polyline needs at least one vertex")
        self.points = pts

    @property
    def start(self) -> Point2:
        return self.points[0]

    @property
    def end(self) -> Point2:
        return self.points[-1]

    def segments(self) -> list:
        pts = self.points
        return list(zip(pts, pts[1:]))

    def reversed(self) -> "Polyline":
        return Polyline(self.points[::-1])

    def closed(self) -> "ClosedPolyline":
        """Close the chain with the straight segment from the last vertex to the first."""
        return ClosedPolyline(self.points)

    def contains_point(self, p: Point2) -> bool:
        return point_on_polyline_points(p, self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return type(other) is type(self) and other.points == self.points

    def __hash__(self):
        return hash((type(self).__name__, self.points))

    def __repr__(self):
        inner = " ".join(f"({p.x},{p.y})" for p in self.points)
        return f"{type(self).__name__}[{inner}]"


class ClosedPolyline(Polyline):
    """Closed polyline A_1 ... A_m; the segment A_m A_1 is implied."""

    __slots__ = ()

    def __init__(self, points: Iterable):
        super().__init__(points)
        pts = self.points
        while len(pts) > 1 and pts[-1] == pts[0]:
            pts = pts[:-1]
        self.points = pts

    def segments(self) -> list:
        pts = self.points
        if len(pts) == 1:
            return []
        return list(zip(pts, pts[1:] + pts[:1]))

    def reversed(self) -> "ClosedPolyline":
        return ClosedPolyline(self.points[::-1])

    def opened(self) -> Polyline:
        """The traversal A_1 ... A_m A_1 as an open polyline."""
        return Polyline(self.points + self.points[:1])

    def contains_point(self, p: Point2) -> bool:
        return point_on_polyline_points(p, self.points + self.points[:1])


def _open_points(l: Polyline) -> tuple:
    if isinstance(l, ClosedPolyline):
        return l.points + l.points[:1]
    return l.points


def point_on_polyline(p: Point2, l: Polyline) -> bool:
    return point_on_polyline_points(p, _open_points(l))


def ray_directions() -> Iterator[tuple]:
    """Deterministic pool of primitive integer directions (1,0), (0,1), (1,1), (1,2), (2,1), (1,3), ..."""
    yield (1, 0)
    yield (0, 1)
    for total in count(2):
        for a in range(1, total):
            b = total - a
            if gcd(a, b) == 1:
                yield (a, b)


def winding_number(l: ClosedPolyline, O: Point2, directions: Iterable | None = None) -> int:
    """Exact winding number of the closed polyline ``l`` around ``O``.

    A ray from ``O`` is cast along the first direction of ``directions``
    (default :func:`ray_directions`) that meets no vertex of ``l``; the
    answer is the signed count of segments crossing it.
    """
    if not isinstance(l, ClosedPolyline):
        l = ClosedPolyline(l)
    O = _as_point(O)
    pts = l.points
    if point_on_polyline_points(O, pts + pts[:1]):
        raise PointOnPolyline(f"point {O} lies on the polyline")
    if len(pts) < 3:
        return 0
    ox, oy = O
    rel = [(p.x - ox, p.y - oy) for p in pts]
    pool = ray_directions() if directions is None else directions
    for dx, dy in pool:
        sides = []
        admissible = True
        for rx, ry in rel:
            s = sign(dx * ry - dy * rx)
            if s == 0 and dx * rx + dy * ry > 0:
                admissible = False
                break
            sides.append(s)
        if admissible:
            break
    else:
        raise ValueError("direction pool exhausted before an admissible ray was found")
    total = 0
    n = len(rel)
    for i in range(n):
        si = sides[i]
        j = i + 1 if i + 1 < n else 0
        sj = sides[j]
        if si * sj < 0:
            (ax, ay), (bx, by) = rel[i], rel[j]
            if sign(ax * by - ay * bx) == sj:
                total += sj
    return total


def winding_fraction(l: Polyline, O: Point2) -> float:
    """Partial winding w'(l, O): the oriented-angle sum along ``l`` divided by 2*pi (float oracle)."""
    O = _as_point(O)
    pts = _open_points(l)
    if point_on_polyline_points(O, pts):
        raise PointOnPolyline(f"point {O} lies on the polyline")
    total = 0.0
    for a, b in zip(pts, pts[1:]):
        total += oriented_angle(O, a, b)
    return total / TWO_PI


def round_guarded(value: float, what: str = "oracle sum") -> int:
    k = round(value)
    if abs(value - k) >= ORACLE_TOLERANCE:
        raise RoundingGuard(f"{what} {value!r} is not within {ORACLE_TOLERANCE} of an integer")
    return int(k)


def winding_number_oracle(l: ClosedPolyline, O: Point2) -> int:
    """Winding number from the angle sum, rounded with the 1e-6 guard."""
    return round_guarded(winding_fraction(ClosedPolyline(l.points).opened(), O), "winding sum")


def concatenate(l1: Polyline, l2: Polyline) -> Polyline:
    """l1 l2 for open polylines; the last vertex of l1 must be the first of l2."""
    if l1.end != l2.start:
        raise EndpointMismatch(f"{l1.end} != {l2.start}")
    return Polyline(l1.points + l2.points[1:])


def concatenate_closed(l1: ClosedPolyline, l2: ClosedPolyline) -> ClosedPolyline:
    """Closed concatenation: A_1...A_m C and B_1...B_k C give A_1...A_m C B_1...B_k C."""
    if l1.points[-1] != l2.points[-1]:
        raise EndpointMismatch("closed polylines must share their last vertex")
    return ClosedPolyline(l1.points + l2.points)


def chain(*parts: Polyline) -> Polyline:
    out = parts[0]
    for p in parts[1:]:
        out = concatenate(out, p)
    return out


def repeat(l: ClosedPolyline, n: int) -> ClosedPolyline:
    """The power l^n; l^0 is the single first vertex and negative powers traverse l backwards."""
    if n == 0:
        return ClosedPolyline(l.points[:1])
    base = l.points if n > 0 else l.reversed().points
    return ClosedPolyline(base * abs(n))


def _crossings(l: Polyline, p: Polyline) -> list:
    segs_l = l.segments()
    segs_p = p.segments()
    found = []
    for i, a in enumerate(segs_l):
        for j, b in enumerate(segs_p):
            c = segment_crossing(a, b)
            if c.kind is CrossingKind.DISJOINT:
                continue
            if c.kind is CrossingKind.DEGENERATE:
                raise NotGeneralPosition(
                    f"segments {a} and {b} meet non-transversally at {c.point}", pair=(a, b)
                )
            found.append((i, j, c))
    return found


def _require_endpoints_off(l: ClosedPolyline, p: Polyline):
    for q in (p.start, p.end):
        if l.contains_point(q):
            raise NotGeneralPosition(f"endpoint {q} lies on the closed polyline", pair=None)


def crossing_count_mod2(l: ClosedPolyline, p: Polyline) -> int:
    """Parity (0 or 1) of the number of transversal intersection points of ``l`` and ``p``."""
    _require_endpoints_off(l, p)
    return len(_crossings(l, p)) % 2


def signed_crossing_sum(l: ClosedPolyline, p: Polyline) -> int:
    """l . p: the sum of crossing signs, each taken with the l-segment first."""
    _require_endpoints_off(l, p)
    return sum(c.sign for _, _, c in _crossings(l, p))


def inside_mod2(l: ClosedPolyline, O: Point2) -> bool:
    """Membership in the mod-2 interior: the winding number is odd."""
    return winding_number(l, O) % 2 == 1


def d_box(l: Polyline, p: Polyline) -> int:
    """The boundary invariant of l x p from four partial windings, rounded under the guard.

    For ``l = A...B`` and ``p = C...D`` this is
    w'(l, D) + w'(p, A) - w'(p, B) - w'(l, C).
    """
    lo = Polyline(_open_points(l))
    po = Polyline(_open_points(p))
    a, b, c, d = lo.start, lo.end, po.start, po.end
    for q, poly in ((d, lo), (c, lo), (a, po), (b, po)):
        if point_on_polyline_points(q, poly.points):
            raise PointOnPolyline(f"endpoint {q} lies on the other polyline")
    value = winding_fraction(lo, d) + winding_fraction(po, a) - winding_fraction(po, b) - winding_fraction(lo, c)
    return round_guarded(value, "boundary sum")


__all__ = [
    "Polyline", "ClosedPolyline", "point_on_polyline", "ray_directions", "winding_number",
    "winding_fraction", "winding_number_oracle", "round_guarded", "concatenate",
    "concatenate_closed", "chain", "repeat", "crossing_count_mod2", "signed_crossing_sum",
    "inside_mod2", "d_box", "ORACLE_TOLERANCE",
]
