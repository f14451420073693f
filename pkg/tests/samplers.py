"""Seeded random inputs shared by the unit and acceptance tests."""
from __future__ import annotations

import math
import random

from oracles import orient_sign, segment_params

from almostembed.geometry import pt, pt3
from almostembed.space3 import ClosedPolyline3, linking_numbers_all_apexes, polylines_disjoint3


def rand_pt(rng: random.Random, r: int = 20):
    return (rng.randint(-r, r), rng.randint(-r, r))


def convex_hull(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient_sign(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(pts[::-1])
    return lower[:-1] + upper[:-1]


def random_convex_polygon(rng: random.Random):
    while True:
        hull = convex_hull([rand_pt(rng) for _ in range(rng.randint(3, 12))])
        if len(hull) >= 3:
            return hull if rng.random() < 0.5 else hull[::-1]


def _segments_cross_or_touch(a, b, c, d) -> bool:
    tu = segment_params(a, b, c, d)
    if tu is None:
        # parallel: only collinear overlaps count
        if orient_sign(a, b, c) != 0:
            return False
        key = (lambda p: p[0]) if a[0] != b[0] else (lambda p: p[1])
        lo1, hi1 = sorted((key(a), key(b)))
        lo2, hi2 = sorted((key(c), key(d)))
        return max(lo1, lo2) <= min(hi1, hi2)
    t, u = tu
    return 0 <= t <= 1 and 0 <= u <= 1


def is_simple(points) -> bool:
    n = len(points)
    segs = list(zip(points, points[1:] + points[:1]))
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_cross_or_touch(*segs[i], *segs[j]):
                return False
    for i in range(n):
        if orient_sign(points[i - 1], points[i], points[(i + 1) % n]) == 0:
            return False
    return True


def random_simple_polygon(rng: random.Random):
    """A star-shaped polygon: random points sorted by angle about a random centre."""
    while True:
        c = rand_pt(rng, 5)
        pts = {rand_pt(rng) for _ in range(rng.randint(3, 12))}
        pts.discard(c)
        ordered = sorted(pts, key=lambda p: math.atan2(p[1] - c[1], p[0] - c[0]))
        if len(ordered) >= 3 and is_simple(ordered):
            return ordered if rng.random() < 0.5 else ordered[::-1]


def query_point(rng: random.Random, polygon):
    """A random point (with half-integer coordinates) off the polygon boundary."""
    while True:
        q = (rng.randint(-50, 50) / 2, rng.randint(-50, 50) / 2)
        on = False
        for a, b in zip(polygon, polygon[1:] + polygon[:1]):
            if orient_sign(a, b, q) == 0 and min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) \
                    and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]):
                on = True
        if not on:
            return q


def as_pts(seq):
    return [pt(*(str(c) if isinstance(c, float) else c for c in p)) for p in seq]


def _generic_union(l_pts, l_closed: bool, p_pts) -> bool:
    """All vertices distinct and no vertex of one polyline on the supporting line of a segment of the other."""
    if len(set(l_pts) | set(p_pts)) != len(l_pts) + len(p_pts):
        return False
    l_segs = list(zip(l_pts, l_pts[1:] + (l_pts[:1] if l_closed else [])))
    p_segs = list(zip(p_pts, p_pts[1:]))
    for a, b in l_segs:
        if any(orient_sign(a, b, q) == 0 for q in p_pts):
            return False
    for a, b in p_segs:
        if any(orient_sign(a, b, q) == 0 for q in l_pts):
            return False
    return True


def random_gp_pair(rng: random.Random, closed_l: bool = True):
    """(l, p) vertex lists in mutual general position; l is closed when ``closed_l``."""
    while True:
        l = [rand_pt(rng) for _ in range(rng.randint(3 if closed_l else 2, 6))]
        p = [rand_pt(rng) for _ in range(rng.randint(2, 5))]
        if len(set(l)) != len(l) or len(set(p)) != len(p):
            continue
        if _generic_union(l, closed_l, p):
            return l, p


def random_disjoint_pair(rng: random.Random):
    """Two open polylines that do not meet at all (degenerate positions allowed elsewhere)."""
    while True:
        l = [rand_pt(rng, 10) for _ in range(rng.randint(2, 5))]
        p = [rand_pt(rng, 10) for _ in range(rng.randint(2, 5))]
        l_segs = list(zip(l, l[1:]))
        p_segs = list(zip(p, p[1:]))
        if any(a == b for a, b in l_segs + p_segs):
            continue
        if not any(_segments_cross_or_touch(a, b, c, d) for a, b in l_segs for c, d in p_segs):
            return l, p


def random_cycle_pair3(rng: random.Random, r: int = 6):
    """Two disjoint closed polylines in space with at least one generic fan."""
    while True:
        c1 = [pt3(*(rng.randint(-r, r) for _ in range(3))) for _ in range(rng.randint(3, 5))]
        shift = [rng.randint(-2, 2) for _ in range(3)]
        c2 = [pt3(*(rng.randint(-r, r) + s for s in shift)) for _ in range(rng.randint(3, 5))]
        try:
            C1, C2 = ClosedPolyline3(c1), ClosedPolyline3(c2)
        except ValueError:
            continue
        if not polylines_disjoint3(C1.segments(), C2.segments()):
            continue
        if linking_numbers_all_apexes(C1, C2):
            return C1, C2


def random_six_points(rng: random.Random, r: int = 50):
    from almostembed.space3 import no_four_coplanar

    while True:
        pts = [pt3(*(rng.randint(-r, r) for _ in range(3))) for _ in range(6)]
        if no_four_coplanar(pts):
            return pts
