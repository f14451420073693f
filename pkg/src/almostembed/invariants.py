"""Integer invariants of drawings: cycle windings, W_f for K4, Wu numbers and polyline degree.

Wu numbers are defined through partial windings, which are irrational in
general. They are evaluated exactly by closing every path with the straight
segment back to its start: the partial winding becomes an integer winding
number minus a closing angle, and the closing angles of the three terms are
the angles of the triangle A1A2A3, which sum to +-pi. So

    wu = 2 * (sum of three integer windings) + WU_ORIENTATION_SIGN * orientation(A1, A2, A3).

The sign constant was calibrated against the float oracle and is pinned by a
regression test. When an endpoint lies on a closing segment (in particular
when A1, A2, A3 are collinear) the float oracle is used and the result is
flagged as not exact.
"""
from __future__ import annotations

import math
from itertools import combinations, permutations
from typing import NamedTuple, Sequence

from .errors import (
    DegenerateEndpoints,
    DegenerateTurn,
    GeometryError,
    NotCyclicChain,
    NotTriodic,
    PointOnPolyline,
)
from .geometry import Point2, orientation, oriented_angle, point_on_polyline_points, point_on_segment
from .graph import Graph, GraphDrawing, restrict_cycle, restrict_path
from .winding import (
    ORACLE_TOLERANCE,
    TWO_PI,
    ClosedPolyline,
    Polyline,
    chain,
    round_guarded,
    winding_fraction,
    winding_number,
)

WU_ORIENTATION_SIGN = 1

K4_CYCLES = {1: (2, 3, 4), 2: (1, 3, 4), 3: (1, 2, 4), 4: (1, 2, 3)}
K4_APEX_LEAVES = {4: (1, 2, 3), 3: (1, 4, 2), 2: (1, 3, 4), 1: (2, 4, 3)}


class WuResult(NamedTuple):
    value: int
    exact: bool


# -- cycle windings ------------------------------------------------------------


def w_f(f: GraphDrawing, cycle: Sequence[int], v: int) -> int:
    """Winding number of f restricted to the oriented cycle around f(v)."""
    if v in cycle:
        raise ValueError(f"vertex {v} lies on the cycle {tuple(cycle)}")
    return winding_number(restrict_cycle(f, cycle), f.vertices[v])


class K4InvariantVector(NamedTuple):
    n1: int
    n2: int
    n3: int
    n4: int
    W: int

    @property
    def values(self) -> tuple:
        return (self.n1, self.n2, self.n3, self.n4)


def W_f(f: GraphDrawing) -> K4InvariantVector:
    """The four numbers w_f(C_j, j) and their alternating sum -n1 + n2 - n3 + n4."""
    if f.graph != Graph.complete(4):
        raise ValueError("W_f is defined for drawings of K4")
    ns = [w_f(f, K4_CYCLES[j], j) for j in (1, 2, 3, 4)]
    return K4InvariantVector(*ns, -ns[0] + ns[1] - ns[2] + ns[3])


def fixed_point_cycle_sum(f: GraphDrawing, O: Point2) -> int:
    """-w(f|234, O) + w(f|134, O) - w(f|124, O) + w(f|123, O) for a K4 drawing."""
    total = 0
    for j in (1, 2, 3, 4):
        total += (-1) ** j * winding_number(restrict_cycle(f, K4_CYCLES[j]), O)
    return total


# -- exact evaluation of partial-winding sums ------------------------------------


def _closure(points: tuple, X: Point2):
    """Split w'(points, X) into an integer winding and a closing angle; None if X is on the closing segment."""
    P, Q = points[0], points[-1]
    if point_on_segment(X, (Q, P)):
        return None
    return winding_number(ClosedPolyline(points), X), oriented_angle(X, Q, P)


def _oracle_sum(terms) -> float:
    return sum(winding_fraction(Polyline(pts), X) for pts, X in terms)


def _oracle_wu(terms, factor: int) -> int:
    value = factor * _oracle_sum(terms)
    k = round(value)
    if abs(value - k) >= ORACLE_TOLERANCE:
        raise DegenerateEndpoints(f"oracle value {value!r} is not within {ORACLE_TOLERANCE} of an integer")
    return int(k)


def _three_term_wu(terms, A1, A2, A3, check: bool) -> WuResult:
    s = orientation(A1, A2, A3)
    parts = None if s == 0 else [_closure(pts, X) for pts, X in terms]
    if parts is None or any(p is None for p in parts):
        return WuResult(_oracle_wu(terms, 2), False)
    value = 2 * sum(w for w, _ in parts) + WU_ORIENTATION_SIGN * s
    if value % 2 != 1:
        raise AssertionError(f"exact Wu number {value} is even")
    if check:
        oracle = 2 * _oracle_sum(terms)
        if abs(oracle - round(oracle)) < ORACLE_TOLERANCE and round(oracle) != value:
            raise AssertionError(f"exact Wu {value} disagrees with oracle {oracle!r}")
    return WuResult(value, True)


def _as_poly(l) -> Polyline:
    return l if isinstance(l, Polyline) and not isinstance(l, ClosedPolyline) else Polyline(l)


# -- triodic and cyclic Wu numbers -----------------------------------------------


def triodic_terms(l1, l2, l3):
    """Check the triodic conditions and return the three (path, basepoint) terms."""
    l1, l2, l3 = _as_poly(l1), _as_poly(l2), _as_poly(l3)
    if not (l1.start == l2.start == l3.start):
        raise NotTriodic("the three polylines must share their first vertex")
    ls = (l1, l2, l3)
    A = [l.end for l in ls]
    for i in range(3):
        for j in range(3):
            if i != j and point_on_polyline_points(A[i], ls[j].points):
                raise NotTriodic(f"endpoint A{i + 1} lies on l{j + 1}")
    A1, A2, A3 = A
    terms = [
        (l2.points[::-1] + l3.points[1:], A1),
        (l1.points[::-1] + l2.points[1:], A3),
        (l3.points[::-1] + l1.points[1:], A2),
    ]
    return terms, A1, A2, A3


def wu_triodic_result(l1, l2, l3, check: bool = True) -> WuResult:
    terms, A1, A2, A3 = triodic_terms(l1, l2, l3)
    return _three_term_wu(terms, A1, A2, A3, check)


def wu_triodic(l1, l2, l3, check: bool = True) -> int:
    """Triodic Wu number of three polylines from a common point O to A1, A2, A3."""
    return wu_triodic_result(l1, l2, l3, check).value


def wu_triodic_oracle(l1, l2, l3) -> float:
    """Unrounded float value of the doubled partial-winding sum."""
    terms, *_ = triodic_terms(l1, l2, l3)
    return 2 * _oracle_sum(terms)


def cyclic_terms(l1, l2, l3):
    l1, l2, l3 = _as_poly(l1), _as_poly(l2), _as_poly(l3)
    if l1.end != l2.start or l2.end != l3.start or l3.end != l1.start:
        raise NotCyclicChain("polylines do not form a closed chain A1 -> A2 -> A3 -> A1")
    A1, A2, A3 = l1.start, l2.start, l3.start
    if point_on_polyline_points(A1, l2.points):
        raise NotCyclicChain("A1 lies on l2")
    if point_on_polyline_points(A2, l3.points):
        raise NotCyclicChain("A2 lies on l3")
    if point_on_polyline_points(A3, l1.points):
        raise NotCyclicChain("A3 lies on l1")
    terms = [(l2.points, A1), (l1.points, A3), (l3.points, A2)]
    return terms, A1, A2, A3


def wu_cyclic_result(l1, l2, l3, check: bool = True) -> WuResult:
    terms, A1, A2, A3 = cyclic_terms(l1, l2, l3)
    return _three_term_wu(terms, A1, A2, A3, check)


def wu_cyclic(l1, l2, l3, check: bool = True) -> int:
    """Cyclic Wu number of a chain l1: A1 -> A2, l2: A2 -> A3, l3: A3 -> A1."""
    return wu_cyclic_result(l1, l2, l3, check).value


def wu_cyclic_oracle(l1, l2, l3) -> float:
    terms, *_ = cyclic_terms(l1, l2, l3)
    return 2 * _oracle_sum(terms)


# -- cyclic Wu number of a chain of n polylines ----------------------------------


def ncyclic_terms(ls):
    ls = [_as_poly(l) for l in ls]
    n = len(ls)
    if n < 3:
        raise NotCyclicChain("need at least three polylines")
    for i in range(n):
        if ls[i].end != ls[(i + 1) % n].start:
            raise NotCyclicChain(f"l{i + 1} does not end where l{(i + 1) % n + 1} starts")
    A = [l.start for l in ls]
    terms = []
    for i in range(n):
        rest = [ls[(i + k) % n] for k in range(1, n - 1)]
        path = chain(*rest).points
        if point_on_polyline_points(A[i], path):
            raise PointOnPolyline(f"A{i + 1} lies on the polylines opposite to it")
        terms.append((path, A[i]))
    return terms, A


def wu_ncyclic_result(ls, check: bool = True) -> WuResult:
    """Cyclic Wu number of a closed chain of n polylines.

    The term at A_i is the partial winding of the polylines not incident to
    A_i around A_i. For even n the plain sum is used (already an integer);
    for odd n it is doubled, so three polylines give the cyclic Wu number.
    """
    terms, A = ncyclic_terms(ls)
    n = len(A)
    factor = 2 if n % 2 else 1
    parts = [_closure(pts, X) for pts, X in terms]
    if any(p is None for p in parts):
        return WuResult(_oracle_wu(terms, factor), False)
    angles = sum(a for _, a in parts) / TWO_PI
    # the closing angles sum to an odd multiple of pi when n is odd, an even one when n is even
    half = n / 2
    closing = round(angles - half) + half
    if abs(angles - closing) >= ORACLE_TOLERANCE:
        raise DegenerateEndpoints(f"closing angle sum {angles!r} is not near {closing}")
    value = factor * (sum(w for w, _ in parts) - closing)
    value = int(round(value))
    if check:
        oracle = factor * _oracle_sum(terms)
        if abs(oracle - round(oracle)) < ORACLE_TOLERANCE and round(oracle) != value:
            raise AssertionError(f"exact value {value} disagrees with oracle {oracle!r}")
    return WuResult(value, True)


def wu_ncyclic(ls, check: bool = True) -> int:
    return wu_ncyclic_result(ls, check).value


def wu_ncyclic_groupings(ls) -> dict:
    """For four polylines: the 4-term value and the two 3-groupings (l1, l2l3, l4) and (l1l2, l3, l4)."""
    l1, l2, l3, l4 = [_as_poly(l) for l in ls]
    return {
        "l1,l2,l3,l4": wu_ncyclic([l1, l2, l3, l4]),
        "l1,l2l3,l4": wu_cyclic(l1, chain(l2, l3), l4),
        "l1l2,l3,l4": wu_cyclic(chain(l1, l2), l3, l4),
    }


# -- degree ----------------------------------------------------------------------


def degree(l: ClosedPolyline) -> int:
    """Turning number of a closed polyline: the total signed turn of its direction over 2*pi."""
    pts = l.points if isinstance(l, ClosedPolyline) else ClosedPolyline(l).points
    m = len(pts)
    if m < 3:
        raise DegenerateTurn("a closed polyline needs at least three distinct consecutive vertices")
    origin = Point2(pts[0].x * 0, pts[0].y * 0)
    total = 0.0
    for i in range(m):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % m]
        d_in, d_out = b - a, c - b
        turn = oriented_angle(origin, d_in, d_out)
        if turn == math.pi:
            raise DegenerateTurn(f"the polyline doubles back at {b}")
        total += turn
    return round_guarded(total / TWO_PI, "turning sum")


# -- Wu numbers of restrictions of a drawing -------------------------------------


def wu_f_triod(f: GraphDrawing, center: int, leaves: Sequence[int], check: bool = True) -> int:
    """wu(f|c a, f|c b, f|c d) for the triod with centre c and leaves in the given order."""
    ls = [restrict_path(f, (center, leaf)) for leaf in leaves]
    return wu_triodic(*ls, check=check)


def wu_f_star(f: GraphDrawing, apex: int, check: bool = True) -> int:
    """Apex Wu number of a K4 drawing with the leaf order that makes all four agree."""
    return wu_f_triod(f, apex, K4_APEX_LEAVES[apex], check)


def wu_f_cycle(f: GraphDrawing, cycle: Sequence[int], check: bool = True) -> int:
    """wu(f|ij, f|jp, f|pi) for the oriented triangle ijp."""
    i, j, p = cycle
    return wu_cyclic(restrict_path(f, (i, j)), restrict_path(f, (j, p)), restrict_path(f, (p, i)), check=check)


# -- reports ---------------------------------------------------------------------


def label(seq, n: int) -> str:
    sep = "-" if n >= 10 else ""
    return sep.join(str(v) for v in seq)


def simple_cycles(g: Graph) -> list:
    """Each cycle once, starting at its smallest vertex, with second vertex smaller than the last."""
    out = []
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    def extend(path):
        last = path[-1]
        for w in sorted(adj[last]):
            if w == path[0] and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
            elif w > path[0] and w not in path:
                extend(path + [w])

    for s in g.vertices:
        extend([s])
    return sorted(out, key=lambda c: (len(c), c))


def triods(g: Graph) -> list:
    out = []
    for c in g.vertices:
        for leaves in combinations(g.neighbors(c), 3):
            out.append((c, leaves))
    return out


def invariant_report(f: GraphDrawing, cycles=None) -> dict:
    """All defined invariants as a JSON-ready dict with sorted keys.

    ``wf`` holds w_f(C, v) for every listed cycle and every vertex off it;
    ``Wf`` is present for K4; ``wu`` holds triodic Wu numbers of all triods
    and cyclic Wu numbers of all triangles, skipping tuples that violate the
    triodic or cyclic conditions.
    """
    g = f.graph
    n = g.n
    if cycles is None:
        cycles = simple_cycles(g)
    wf = {}
    for C in cycles:
        for v in g.vertices:
            if v in C:
                continue
            key = f"C={label(C, n)},v={v}"
            try:
                wf[key] = w_f(f, C, v)
            except GeometryError:
                wf[key] = None
    report = {"wf": dict(sorted(wf.items()))}
    if g == Graph.complete(4):
        try:
            report["Wf"] = W_f(f).W
        except GeometryError:
            report["Wf"] = None
    wu = {}
    for c, leaves in triods(g):
        key = "triod(" + ",".join(label((c, x), n) for x in leaves) + ")"
        try:
            wu[key] = wu_f_triod(f, c, leaves)
        except GeometryError:
            pass
    for C in simple_cycles(g):
        if len(C) == 3:
            try:
                wu[f"cyc({label(C, n)})"] = wu_f_cycle(f, C)
            except GeometryError:
                pass
    report["wu"] = dict(sorted(wu.items()))
    return report


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparable items."""
    s = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def all_permutations(n: int) -> list:
    return [dict(zip(range(1, n + 1), p)) for p in permutations(range(1, n + 1))]


__all__ = [
    "WU_ORIENTATION_SIGN", "K4_CYCLES", "K4_APEX_LEAVES", "WuResult", "w_f", "W_f",
    "K4InvariantVector", "fixed_point_cycle_sum", "wu_triodic", "wu_triodic_result",
    "wu_triodic_oracle", "wu_cyclic", "wu_cyclic_result", "wu_cyclic_oracle", "wu_ncyclic",
    "wu_ncyclic_result", "wu_ncyclic_groupings", "degree", "wu_f_triod", "wu_f_star",
    "wu_f_cycle", "invariant_report", "simple_cycles", "triods", "permutation_sign",
    "all_permutations", "label",
]
