"""Independent reference implementations used only by the tests.

They use ``fractions.Fraction`` or plain floats and share no code with the
package, so agreement is evidence rather than tautology.
"""
from __future__ import annotations

import math
from fractions import Fraction as F


def fr(p):
    return tuple(F(str(c)) if not isinstance(c, int) else F(c) for c in p)


def closed_pairs(points):
    pts = list(points)
    return list(zip(pts, pts[1:] + pts[:1]))


def angle_winding(points, O) -> int:
    """Winding number from a float atan2 angle sum over the closed vertex list."""
    ox, oy = float(O[0]), float(O[1])
    total = 0.0
    for a, b in closed_pairs(points):
        ax, ay = float(a[0]) - ox, float(a[1]) - oy
        bx, by = float(b[0]) - ox, float(b[1]) - oy
        total += math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    w = total / (2 * math.pi)
    assert abs(w - round(w)) < 1e-6
    return round(w)


def partial_angle(points, O) -> float:
    ox, oy = float(O[0]), float(O[1])
    total = 0.0
    for a, b in zip(points, points[1:]):
        ax, ay = float(a[0]) - ox, float(a[1]) - oy
        bx, by = float(b[0]) - ox, float(b[1]) - oy
        total += math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    return total / (2 * math.pi)


def even_odd_inside(points, O) -> bool:
    """Crossing-parity point-in-polygon test with the half-open rule, in exact Fractions."""
    ox, oy = fr(O)
    inside = False
    for a, b in closed_pairs(points):
        (ax, ay), (bx, by) = fr(a), fr(b)
        if (ay > oy) != (by > oy):
            x = ax + (oy - ay) * (bx - ax) / (by - ay)
            if x > ox:
                inside = not inside
    return inside


def segment_params(a, b, c, d):
    """(t, u) with a + t(b - a) = c + u(d - c) for non-parallel segments, or None."""
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = fr(a), fr(b), fr(c), fr(d)
    rx, ry, sx, sy = bx - ax, by - ay, dx - cx, dy - cy
    den = rx * sy - ry * sx
    if den == 0:
        return None
    t = ((cx - ax) * sy - (cy - ay) * sx) / den
    u = ((cx - ax) * ry - (cy - ay) * rx) / den
    return t, u


def signed_crossings(l_segs, p_segs) -> int:
    """Sum over interior crossings of sign(det(dir of the l segment, dir of the p segment))."""
    total = 0
    for a, b in l_segs:
        for c, d in p_segs:
            tu = segment_params(a, b, c, d)
            if tu is None:
                continue
            t, u = tu
            if 0 < t < 1 and 0 < u < 1:
                (ax, ay), (bx, by), (cx, cy), (dx, dy) = fr(a), fr(b), fr(c), fr(d)
                det = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx)
                total += 1 if det > 0 else -1
    return total


def crossing_parity(l_segs, p_segs) -> int:
    count = 0
    for a, b in l_segs:
        for c, d in p_segs:
            tu = segment_params(a, b, c, d)
            if tu is not None and 0 < tu[0] < 1 and 0 < tu[1] < 1:
                count += 1
    return count % 2


def projection_linking(c1, c2, shear=(F(3, 7), F(5, 11))) -> int:
    """Linking number from a sheared projection to the xy-plane.

    Points are sheared (x, y, z) -> (x + a z, y + b z, z); each crossing where
    c1 lies above c2 contributes sign(det(dir over, dir under)).
    """
    sa, sb = shear

    def proj(p):
        x, y, z = fr(p)
        return (x + sa * z, y + sb * z, z)

    P1 = [proj(p) for p in c1]
    P2 = [proj(p) for p in c2]
    total = 0
    for a, b in closed_pairs(P1):
        for c, d in closed_pairs(P2):
            tu = segment_params(a[:2], b[:2], c[:2], d[:2])
            if tu is None:
                continue
            t, u = tu
            if not (0 <= t <= 1 and 0 <= u <= 1):
                continue
            if t in (0, 1) or u in (0, 1):
                raise ValueError("projection is not generic")
            z1 = a[2] + t * (b[2] - a[2])
            z2 = c[2] + u * (d[2] - c[2])
            if z1 == z2:
                raise ValueError("curves meet")
            if z1 > z2:
                det = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
                total += 1 if det > 0 else -1
    return total


def turning_number(points) -> int:
    pts = [tuple(float(c) for c in p) for p in points]
    m = len(pts)
    total = 0.0
    for i in range(m):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % m]
        ux, uy = b[0] - a[0], b[1] - a[1]
        vx, vy = c[0] - b[0], c[1] - b[1]
        total += math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    return round(total / (2 * math.pi))


def orient_sign(a, b, c) -> int:
    (ax, ay), (bx, by), (cx, cy) = fr(a), fr(b), fr(c)
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def perm_parity(p) -> int:
    """Sign of a permutation by cycle counting."""
    p = list(p)
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
