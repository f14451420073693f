"""Exact rational points, segments and predicates in the plane and in space.

Coordinates are ``gmpy2.mpq`` rationals, so every predicate here is exact.
The only floating point code is :func:`oriented_angle`, which feeds the
angle-sum oracles used for cross-validation.
"""
from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional

from gmpy2 import mpq

from .errors import DegeneratePoint

Rational = type(mpq(0))


def Q(value) -> Rational:
    """Coerce ints, ``"p/q"`` strings, Fractions and mpq values to mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return mpq(value)


def format_q(value) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when q == 1)."""
    q = Q(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign(value) -> int:
    return (value > 0) - (value < 0)


class Point2(NamedTuple):
    x: Rational
    y: Rational

    def __sub__(self, other):
        return Point2(self.x - other.x, self.y - other.y)

    def __add__(self, other):
        return Point2(self.x + other.x, self.y + other.y)

    def scale(self, k) -> "Point2":
        return Point2(self.x * k, self.y * k)

    def to_float(self) -> tuple:
        return float(self.x), float(self.y)


class Point3(NamedTuple):
    x: Rational
    y: Rational
    z: Rational

    def __sub__(self, other):
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __add__(self, other):
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)

    def scale(self, k) -> "Point3":
        return Point3(self.x * k, self.y * k, self.z * k)


def pt(x, y) -> Point2:
    return Point2(Q(x), Q(y))


def pt3(x, y, z) -> Point3:
    return Point3(Q(x), Q(y), Q(z))


class Segment2(NamedTuple):
    start: Point2
    end: Point2


def cross(u, v):
    return u.x * v.y - u.y * v.x


def dot(u, v):
    return u.x * v.x + u.y * v.y


def det3(a, b, c, d):
    """Signed orientation determinant of the tetrahedron ``abcd`` (not reduced to a sign)."""
    ux, uy, uz = b.x - a.x, b.y - a.y, b.z - a.z
    vx, vy, vz = c.x - a.x, c.y - a.y, c.z - a.z
    wx, wy, wz = d.x - a.x, d.y - a.y, d.z - a.z
    return ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx)


def orientation(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of det(b - a, c - a); +1 means ``a, b, c`` turn counterclockwise."""
    return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def _within_box(p, a, b) -> bool:
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)) and (min(a.y, b.y) <= p.y <= max(a.y, b.y))


def point_on_segment(p: Point2, s) -> bool:
    """True iff ``p`` lies on the closed segment ``s`` (endpoints included)."""
    a, b = s
    if orientation(a, b, p) != 0:
        return False
    return _within_box(p, a, b)


def point_on_polyline_points(p: Point2, points) -> bool:
    """True iff ``p`` lies on some segment of the open vertex chain ``points``."""
    if len(points) == 1:
        return p == points[0]
    px, py = p
    for a, b in zip(points, points[1:]):
        if px < a.x and px < b.x or px > a.x and px > b.x:
            continue
        if py < a.y and py < b.y or py > a.y and py > b.y:
            continue
        if (b.x - a.x) * (py - a.y) == (b.y - a.y) * (px - a.x):
            return True
    return False


class CrossingKind(Enum):
    DISJOINT = "disjoint"
    TRANSVERSAL = "transversal"
    DEGENERATE = "degenerate"


class Crossing(NamedTuple):
    kind: CrossingKind
    sign: int = 0
    point: Optional[Point2] = None

    @property
    def is_transversal(self) -> bool:
        return self.kind is CrossingKind.TRANSVERSAL

    @property
    def is_degenerate(self) -> bool:
        return self.kind is CrossingKind.DEGENERATE


DISJOINT = Crossing(CrossingKind.DISJOINT)


def segment_crossing(alpha, beta) -> Crossing:
    """Classify how two directed segments meet.

    TRANSVERSAL means the open interiors cross at one point and no endpoint
    of either segment lies on the other; its sign is the orientation of the
    direction pair (dir alpha, dir beta). Every other kind of contact
    (touching, shared endpoints, collinear overlap) is DEGENERATE and carries
    a witness point.
    """
    a, b = alpha
    c, d = beta
    if max(a.x, b.x) < min(c.x, d.x) or max(c.x, d.x) < min(a.x, b.x):
        return DISJOINT
    if max(a.y, b.y) < min(c.y, d.y) or max(c.y, d.y) < min(a.y, b.y):
        return DISJOINT
    ux, uy = b.x - a.x, b.y - a.y
    vx, vy = d.x - c.x, d.y - c.y
    d1 = sign(ux * (c.y - a.y) - uy * (c.x - a.x))
    d2 = sign(ux * (d.y - a.y) - uy * (d.x - a.x))
    d3 = sign(vx * (a.y - c.y) - vy * (a.x - c.x))
    d4 = sign(vx * (b.y - c.y) - vy * (b.x - c.x))
    if d1 * d2 < 0 and d3 * d4 < 0:
        denom = ux * vy - uy * vx
        t = ((c.x - a.x) * vy - (c.y - a.y) * vx) / denom
        return Crossing(CrossingKind.TRANSVERSAL, sign(denom), Point2(a.x + t * ux, a.y + t * uy))
    if d1 == 0 and _within_box(c, a, b):
        return Crossing(CrossingKind.DEGENERATE, 0, c)
    if d2 == 0 and _within_box(d, a, b):
        return Crossing(CrossingKind.DEGENERATE, 0, d)
    if d3 == 0 and _within_box(a, c, d):
        return Crossing(CrossingKind.DEGENERATE, 0, a)
    if d4 == 0 and _within_box(b, c, d):
        return Crossing(CrossingKind.DEGENERATE, 0, b)
    return DISJOINT


def segments_intersect(alpha, beta) -> bool:
    """Closed-segment intersection test."""
    return segment_crossing(alpha, beta).kind is not CrossingKind.DISJOINT


def oriented_angle(O, A, B) -> float:
    """Oriented angle AOB in (-pi, pi]: rotate OA counterclockwise by it to get the direction of OB.

    Points may be exact (Point2) or float pairs. The cross and dot products
    are formed in the input arithmetic before conversion, so rational inputs
    only lose precision once.
    """
    ax, ay = A[0] - O[0], A[1] - O[1]
    bx, by = B[0] - O[0], B[1] - O[1]
    if (ax == 0 and ay == 0) or (bx == 0 and by == 0):
        raise DegeneratePoint("angle vertex coincides with an endpoint")
    c = ax * by - ay * bx
    d = ax * bx + ay * by
    if c == 0:
        return 0.0 if d > 0 else math.pi
    t = math.atan2(float(c), float(d))
    return math.pi if t == -math.pi else t


def collinear3(a: Point3, b: Point3, c: Point3) -> bool:
    u = b - a
    v = c - a
    return (u.y * v.z - u.z * v.y == 0) and (u.z * v.x - u.x * v.z == 0) and (u.x * v.y - u.y * v.x == 0)


__all__ = [
    "Q", "Rational", "format_q", "sign", "Point2", "Point3", "pt", "pt3", "Segment2",
    "cross", "dot", "det3", "orientation", "point_on_segment", "point_on_polyline_points",
    "CrossingKind", "Crossing", "DISJOINT", "segment_crossing", "segments_intersect",
    "oriented_angle", "collinear3",
]
