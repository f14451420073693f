"""Finger moves and constructive generators of drawings with prescribed invariants.

All coordinates are fixed rationals; every generator can be re-checked with
the invariants module, and the tests do exactly that.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations
from typing import NamedTuple, Sequence

from gmpy2 import mpq

from .errors import CannotRoute, ExhaustedRetries, InfeasibleTarget
from .geometry import Point2, orientation, point_on_segment, pt
from .graph import Graph, GraphDrawing, Grade, is_general_position, polylines_meet, validate
from .winding import ClosedPolyline, Polyline

HALF = mpq(1, 2)


# -- finger moves ----------------------------------------------------------------


class FingerMoveSpec(NamedTuple):
    edge: tuple  # oriented (a, b); the loop is attached at the b end
    pivot: int
    sign: int
    count: int = 1


COMPASS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]


def _linf(v: Point2):
    return max(abs(v.x), abs(v.y))


def _rot(v: Point2) -> Point2:
    return Point2(-v.y, v.x)


def pivot_triangle(c: Point2, r, u) -> tuple:
    """Counterclockwise triangle X, Y, Z with centroid c; X = c + r*u."""
    u = Point2(mpq(u[0]), mpq(u[1]))
    w = _rot(u)
    X = c + u.scale(r)
    Y = c - u.scale(r / 2) + w.scale(r)
    Z = c - u.scale(r / 2) - w.scale(r)
    return X, Y, Z


def _strictly_inside(p, X, Y, Z) -> bool:
    return orientation(X, Y, p) > 0 and orientation(Y, Z, p) > 0 and orientation(Z, X, p) > 0


def _inside_or_on(p, X, Y, Z) -> bool:
    return orientation(X, Y, p) >= 0 and orientation(Y, Z, p) >= 0 and orientation(Z, X, p) >= 0


def append_loop(points: Sequence[Point2], loop: Sequence[Point2], count: int = 1) -> list:
    """End a path P_1 ... P_m with a detour P_m -> loop^count -> loop[0] -> P_m."""
    pts = list(points)
    end = pts[-1]
    pts.extend(list(loop) * count)
    pts.append(loop[0])
    pts.append(end)
    return pts


def loop_around(f: GraphDrawing, anchor: Point2, pivot: int, sign: int, avoid_points: Sequence[Point2] = ()):
    """Find a triangle around f(pivot), reachable from ``anchor`` by a straight connector.

    Returns the loop vertices ordered so that traversing them winds ``sign``
    times around the pivot. The triangle contains no other vertex image, and
    neither it nor the connector touches one (except ``anchor`` itself).
    """
    c = f.vertices[pivot]
    others = [p for v, p in f.vertices.items() if v != pivot]
    dist = [_linf(p - c) for p in others if p != anchor] + [_linf(anchor - c)]
    r = min(dist) / 2
    existing = set(f.all_points()) | set(avoid_points)
    for _ in range(48):
        for u in COMPASS:
            X, Y, Z = pivot_triangle(c, r, u)
            if not _strictly_inside(c, X, Y, Z):
                continue
            if any(q in existing for q in (X, Y, Z)):
                continue
            if any(_inside_or_on(p, X, Y, Z) for p in others):
                continue
            if any(point_on_segment(p, (anchor, X)) for p in others if p != anchor):
                continue
            if point_on_segment(c, (anchor, X)):
                continue
            return (X, Y, Z) if sign > 0 else (X, Z, Y)
        r /= 2
    raise CannotRoute(f"no admissible triangle around vertex {pivot}")


def finger_move(f: GraphDrawing, spec: FingerMoveSpec) -> GraphDrawing:
    """Add ``count`` small loops around the pivot at the b end of edge a -> b.

    The partial winding of f|ab around the pivot changes by sign*count; every
    other partial winding of an edge around a vertex is unchanged.
    """
    a, b = spec.edge
    j = spec.pivot
    if j in (a, b):
        raise ValueError("the pivot must not be an endpoint of the edge")
    if spec.sign not in (1, -1) or spec.count < 1:
        raise ValueError("sign must be +-1 and count positive")
    path = f.edge_path(a, b)
    if path.contains_point(f.vertices[j]):
        raise CannotRoute("the pivot image lies on the edge")
    loop = loop_around(f, path.end, j, spec.sign)
    return f.with_edge_path(a, b, append_loop(path.points, loop, spec.count))


# -- worked examples: single polylines -------------------------------------------


def _point(p) -> Point2:
    return p if isinstance(p, Point2) else pt(*p)


def gen_example_1_2(n: int, O=(0, 0)) -> ClosedPolyline:
    """A closed polyline winding n times around O: a triangle traversed |n| times."""
    O = _point(O)
    A, B, C = O + pt(2, 0), O + pt(-1, 2), O + pt(-1, -2)
    if n == 0:
        return ClosedPolyline([O + pt(1, 0)])
    tri = [A, B, C] if n > 0 else [A, C, B]
    return ClosedPolyline(tri * abs(n))


def _loop_power(base: Point2, loop: Sequence[Point2], n: int) -> list:
    """Vertex list base loop ... base loop ... (|n| times), reversed for negative n, ending before the final base."""
    seq = [base] + list(loop)
    if n < 0:
        seq = [base] + list(loop)[::-1]
    return seq * abs(n)


def gen_example_1_7(n1: int, n2: int, A=(0, 0), B=(4, 0), O=(2, -2)) -> tuple:
    """Three arcs from A to B with pairwise windings n1, n2 and n1 + n2 around O.

    l1 = (A A' A'')^n1 A X B, l2 = A Y B, l3 = (A A' A'')^(-n2) A Z B, where
    the triangle A A' A'' winds once around O and X, Y, Z lie beyond the
    midpoint of AB on the side away from O.
    """
    A, B, O = _point(A), _point(B), _point(O)
    if len({A, B, O}) < 3:
        raise ValueError("A, B and O must be distinct")
    d = O - A
    A1, A2 = O + d + _rot(d), O + d - _rot(d)
    if orientation(A, A1, A2) < 0:
        A1, A2 = A2, A1
    M = (A + B).scale(HALF)
    perp = _rot(B - A).scale(mpq(1, 4))
    if (perp.x * (M.x - O.x) + perp.y * (M.y - O.y)) < 0:
        perp = perp.scale(-1)
    X, Y, Z = M + perp, M + perp.scale(2), M + perp.scale(3)
    l1 = Polyline(_loop_power(A, (A1, A2), n1) + [A, X, B])
    l2 = Polyline([A, Y, B])
    l3 = Polyline(_loop_power(A, (A1, A2), -n2) + [A, Z, B])
    return l1, l2, l3


# -- worked examples: drawings of K4 ---------------------------------------------


def _thin_loop(base: Point2, toward: Point2, reach, half_width) -> tuple:
    """Counterclockwise thin triangle with apex ``base`` reaching past ``toward``."""
    d = toward - base
    tip = base + d.scale(reach)
    w = _rot(d).scale(half_width)
    P, Q = tip + w, tip - w
    if orientation(base, P, Q) < 0:
        P, Q = Q, P
    return P, Q


def gen_example_3_4(n1: int, n2: int, n3: int, n4: int) -> GraphDrawing:
    """Weak almost embedding of K4 with w_f(C_j, j) = n_j.

    Starts from the square with diagonals; the edge 12 gets n3 loops based at
    2 around vertex 3, edge 23 n4 loops based at 3 around 4, edge 34 n1 loops
    based at 4 around 1, and edge 41 n2 loops based at 1 around 2.
    """
    V = {1: pt(0, 0), 2: pt(4, 0), 3: pt(4, 4), 4: pt(0, 4)}
    reach, width = mpq(5, 4), mpq(1, 8)
    paths = {}
    for (a, b, k, count) in ((1, 2, 3, n3), (2, 3, 4, n4), (3, 4, 1, n1), (4, 1, 2, n2)):
        loop = _thin_loop(V[b], V[k], reach, width)
        paths[(a, b)] = Polyline([V[a]] + _loop_power(V[b], loop, count) + [V[b]])
    return GraphDrawing(Graph.complete(4), V, paths)


def _spoke_loop(centre: Point2, k: Point2, eps, reach, width) -> tuple:
    """Thin counterclockwise triangle enclosing the segment from k to the centre.

    Its apex k' lies just beyond the centre on the ray from k; the other two
    corners lie just beyond k on either side of the line.
    """
    d = centre - k
    apex = centre + d.scale(eps)
    tip = k - d.scale(reach)
    w = _rot(d).scale(width)
    P, Q = tip + w, tip - w
    if orientation(apex, P, Q) < 0:
        P, Q = Q, P
    return apex, P, Q


def _example_5_10_positive(n1: int, n2: int, n3: int) -> GraphDrawing:
    V = {1: pt(0, 0), 2: pt(4, 0), 3: pt(2, 3), 4: pt(2, 1)}
    eps, reach, width = mpq(1, 10), mpq(1, 10), mpq(1, 10)
    paths = {}
    # edge ab carries loops around the spoke from vertex k to the centre
    for (a, b, k, count) in ((1, 2, 3, n3), (2, 3, 1, n1), (1, 3, 2, n2)):
        apex, P, Q = _spoke_loop(V[4], V[k], eps, reach, width)
        paths[(a, b)] = Polyline([V[a]] + _loop_power(apex, (P, Q), count) + [apex, V[b]])
    return GraphDrawing(Graph.complete(4), V, paths)


def gen_example_5_10(n1: int, n2: int, n3: int, n4: int) -> GraphDrawing:
    """Almost embedding of K4 with w_f(C_j, j) = n_j, provided -n1 + n2 - n3 + n4 = +-1."""
    N = -n1 + n2 - n3 + n4
    if N == 1:
        return _example_5_10_positive(n1, n2, n3)
    if N == -1:
        f = _example_5_10_positive(n2, n1, -n3)
        return f.relabel({1: 2, 2: 1, 3: 3, 4: 4})
    raise InfeasibleTarget(f"alternating sum {N} is not +-1")


def gen_example_5_5b(n: int) -> GraphDrawing:
    """Almost embedding of K5 - 45 with w_f(123, 5) = n and w_f(123, 4) = n + 1."""
    g = Graph.complete(5).minus_edge(4, 5)
    V = {1: pt(0, 0), 2: pt(6, 0), 3: pt(3, 6), 4: pt(3, 2), 5: pt(3, 9)}
    if n == 0:
        return GraphDrawing(g, V)
    P = pt(3, mpq(3, 2))
    L, R = pt(mpq(5, 2), mpq(19, 2)), pt(mpq(7, 2), mpq(19, 2))
    loop = (R, L) if n > 0 else (L, R)
    path = [V[1]] + [q for _ in range(abs(n)) for q in (P,) + loop] + [P, V[2]]
    return GraphDrawing(g, V, {(1, 2): path})


def pentagon_k5_minus_45() -> GraphDrawing:
    """A convex (approximately regular) pentagon 1..5 with all diagonals except 45."""
    V = {1: pt(0, 100), 2: pt(95, 31), 3: pt(59, -81), 4: pt(-59, -81), 5: pt(-95, 31)}
    return GraphDrawing(Graph.complete(5).minus_edge(4, 5), V)


def pentagon_k5() -> GraphDrawing:
    V = {1: pt(0, 100), 2: pt(95, 31), 3: pt(59, -81), 4: pt(-59, -81), 5: pt(-95, 31)}
    return GraphDrawing(Graph.complete(5), V)


def square_with_diagonals() -> GraphDrawing:
    return GraphDrawing(Graph.complete(4), {1: pt(0, 0), 2: pt(4, 0), 3: pt(4, 4), 4: pt(0, 4)})


def triangle_with_centre() -> GraphDrawing:
    return GraphDrawing(Graph.complete(4), {1: pt(0, 0), 2: pt(4, 0), 3: pt(2, 3), 4: pt(2, 1)})


# -- worked examples: Wu numbers -------------------------------------------------

WU_TRIANGLE = (pt(4, 0), pt(-2, 3), pt(-2, -3))


class TriodicTuple(NamedTuple):
    l1: Polyline
    l2: Polyline
    l3: Polyline


class CyclicTuple(NamedTuple):
    l1: Polyline
    l2: Polyline
    l3: Polyline


def gen_example_6_3_drawing(n: int) -> GraphDrawing:
    """Star with leaves 1, 2, 3 and centre 4 whose triodic Wu number wu(41, 42, 43) is 2n + 1."""
    A1, A2, A3 = WU_TRIANGLE
    f = GraphDrawing(Graph.star(3), {1: A1, 2: A2, 3: A3, 4: pt(0, 0)})
    if n:
        f = finger_move(f, FingerMoveSpec((4, 1), 3, -1 if n > 0 else 1, abs(n)))
    return f


def gen_example_6_3(n: int) -> TriodicTuple:
    f = gen_example_6_3_drawing(n)
    return TriodicTuple(*(f.edge_path(4, v) for v in (1, 2, 3)))


def gen_example_6_6_drawing(n: int) -> GraphDrawing:
    """Triangle 1, 2, 3 whose cyclic Wu number wu(12, 23, 31) is 2n + 1."""
    A1, A2, A3 = WU_TRIANGLE
    f = GraphDrawing(Graph.complete(3), {1: A1, 2: A2, 3: A3})
    if n:
        f = finger_move(f, FingerMoveSpec((2, 3), 1, 1 if n > 0 else -1, abs(n)))
    return f


def gen_example_6_6(n: int) -> CyclicTuple:
    f = gen_example_6_6_drawing(n)
    return CyclicTuple(f.edge_path(1, 2), f.edge_path(2, 3), f.edge_path(3, 1))


# -- random drawings -------------------------------------------------------------


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_drawing(graph: Graph, seed, grid_size: int = 101, max_bends: int = 2, max_attempts: int = 1000) -> GraphDrawing:
    """Vertices and bend points uniform on the integer grid, resampled until in general position."""
    rng = _rng(seed)

    def rp():
        return pt(rng.randrange(grid_size), rng.randrange(grid_size))

    for _ in range(max_attempts):
        verts = {v: rp() for v in graph.vertices}
        paths = {}
        for (u, v) in graph.edges:
            bends = [rp() for _ in range(rng.randint(0, max_bends))]
            paths[(u, v)] = [verts[u]] + bends + [verts[v]]
        try:
            f = GraphDrawing(graph, verts, paths)
        except ValueError:
            continue
        if is_general_position(f, first_only=True).ok:
            return f
    raise ExhaustedRetries("no general-position drawing found", seed=None, attempts=max_attempts)


TEMPLATES = {
    "K4": (lambda: Graph.complete(4), {1: (0, 0), 2: (100, 0), 3: (50, 90), 4: (50, 30)}),
    "K5-45": (
        lambda: Graph.complete(5).minus_edge(4, 5),
        {1: (0, 0), 2: (120, 0), 3: (60, 120), 4: (60, 40), 5: (60, 180)},
    ),
    "K3,3-ab": (
        lambda: Graph.complete_bipartite(3, 3).minus_edge(1, 4),
        {2: (0, 0), 5: (80, 0), 3: (80, 80), 6: (0, 80), 4: (40, 40), 1: (-60, -60)},
    ),
    "star3": (lambda: Graph.star(3), {1: (100, 0), 2: (-50, 87), 3: (-50, -87), 4: (0, 0)}),
    "C3": (lambda: Graph.cycle(3), {1: (100, 0), 2: (-50, 87), 3: (-50, -87)}),
    "C4": (lambda: Graph.cycle(4), {1: (0, 0), 2: (100, 0), 3: (100, 100), 4: (0, 100)}),
    "P4": (lambda: Graph.path(4), {1: (0, 0), 2: (60, 40), 3: (120, 0), 4: (180, 40)}),
}


@lru_cache(maxsize=None)
def automorphisms(graph: Graph) -> tuple:
    edges = set(graph.edges)
    out = []
    for perm in permutations(graph.vertices):
        sigma = dict(zip(graph.vertices, perm))
        if all(tuple(sorted((sigma[u], sigma[v]))) in edges for u, v in graph.edges):
            out.append(tuple(sorted(sigma.items())))
    return tuple(out)


def _edge_conflicts(f: GraphDrawing, edge: tuple, poly: Polyline) -> bool:
    """True if ``poly`` as the image of ``edge`` would meet a nonadjacent simplex."""
    u, v = edge
    for w, p in f.vertices.items():
        if w not in (u, v) and poly.contains_point(p):
            return True
    for other in f.graph.edges:
        if u in other or v in other:
            continue
        if polylines_meet(poly, f.paths[other]) is not None:
            return True
    return False


def _component(graph: Graph, start: int, removed: set) -> list:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in graph.neighbors(x):
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return sorted(seen)


def _component_chain(f: GraphDrawing, comp: list):
    """The image of a path-shaped component as one vertex chain, or None."""
    g = f.graph
    cset = set(comp)
    sub = [e for e in g.edges if e[0] in cset and e[1] in cset]
    if len(comp) == 1:
        return [f.vertices[comp[0]]]
    if len(sub) != len(comp) - 1:
        return None
    deg = {v: 0 for v in comp}
    for a, b in sub:
        deg[a] += 1
        deg[b] += 1
    if max(deg.values()) > 2:
        return None
    start = min(v for v in comp if deg[v] == 1)
    order = [start]
    while len(order) < len(comp):
        last = order[-1]
        nxt = [w for a, b in sub for w in (a, b) if last in (a, b) and w != last and w not in order]
        order.append(nxt[0])
    pts = [f.vertices[order[0]]]
    for x, y in zip(order, order[1:]):
        pts.extend(f.edge_path(x, y).points[1:])
    return pts


def _unit_linf(v: Point2):
    n = _linf(v)
    return None if n == 0 else v.scale(1 / n)


def tube_around(chain: Sequence[Point2], delta):
    """A counterclockwise polygon at offset ~delta around a vertex chain, or None when it folds."""
    if len(chain) == 1:
        return list(pivot_triangle(chain[0], delta, (1, 0)))
    dirs = [_unit_linf(b - a) for a, b in zip(chain, chain[1:])]
    if any(d is None for d in dirs):
        return None
    normals = [_rot(dirs[0])]
    for d0, d1 in zip(dirs, dirs[1:]):
        nu = _unit_linf(_rot(d0 + d1))
        if nu is None:
            return None
        normals.append(nu)
    normals.append(_rot(dirs[-1]))
    left = [q + nu.scale(delta) for q, nu in zip(chain, normals)]
    right = [q - nu.scale(delta) for q, nu in zip(chain, normals)]
    start_cap = chain[0] - dirs[0].scale(delta)
    end_cap = chain[-1] + dirs[-1].scale(delta)
    return [start_cap] + right + [end_cap] + left[::-1]


def _approx_d2(p: Point2, q: Point2) -> float:
    dx, dy = float(p.x - q.x), float(p.y - q.y)
    return dx * dx + dy * dy


def component_finger_move(f: GraphDrawing, rng: random.Random, tries: int = 6):
    """Loop one edge around the image of a path-shaped component of the rest of the graph.

    Returns the new drawing, or None if the random choice could not be routed
    while keeping f an almost embedding.
    """
    g = f.graph
    if not g.edges:
        return None
    a, b = rng.choice(g.edges)
    if rng.random() < 0.5:
        a, b = b, a
    rest = [v for v in g.vertices if v not in (a, b)]
    if not rest:
        return None
    comp = _component(g, rng.choice(rest), {a, b})
    chain = _component_chain(f, comp)
    if chain is None:
        return None
    sign = rng.choice((1, -1))
    path = f.edge_path(a, b).points
    scale = min(_linf(q - p) for p, q in zip(path, path[1:]))
    for q in f.vertices.values():
        for c in chain:
            if q != c:
                scale = min(scale, _linf(q - c))
    delta = scale / 4
    for _ in range(tries):
        tube = tube_around(chain, delta)
        if tube is not None:
            if sign < 0:
                tube = [tube[0]] + tube[1:][::-1]
            candidates = sorted(
                ((_approx_d2(p, t), k, i) for k, p in enumerate(path) for i, t in enumerate(tube)),
            )[:4]
            for _, k, i in candidates:
                loop = tube[i:] + tube[:i]
                new = list(path[: k + 1]) + loop + [loop[0]] + list(path[k:])
                poly = Polyline(new)
                if not _edge_conflicts(f, (a, b), poly):
                    return f.with_edge_path(a, b, poly)
        delta /= 2
    return None


def jiggle_move(f: GraphDrawing, rng: random.Random):
    """Insert a bend near the middle of a random segment; None if that breaks the almost embedding."""
    g = f.graph
    if not g.edges:
        return None
    e = rng.choice(g.edges)
    path = list(f.paths[e].points)
    i = rng.randrange(len(path) - 1)
    p, q = path[i], path[i + 1]
    h = _linf(q - p) / 4
    m = (p + q).scale(HALF)
    bend = m + Point2(h * mpq(rng.randint(-8, 8), 8), h * mpq(rng.randint(-8, 8), 8))
    if bend in (p, q):
        return None
    poly = Polyline(path[: i + 1] + [bend] + path[i + 1:])
    if _edge_conflicts(f, e, poly):
        return None
    return f.with_edge_path(e[0], e[1], poly)


def template_drawing(name: str, rng: random.Random, jitter: int = 8, max_attempts: int = 200) -> GraphDrawing:
    """The named planar straight-line template with jittered vertices and a random automorphism applied."""
    make, coords = TEMPLATES[name]
    g = make()
    for _ in range(max_attempts):
        V = {v: pt(x + rng.randint(-jitter, jitter), y + rng.randint(-jitter, jitter)) for v, (x, y) in coords.items()}
        f = GraphDrawing(g, V)
        if validate(f).grade is Grade.ALMOST_EMBEDDING:
            sigma = dict(rng.choice(automorphisms(g)))
            return f.relabel(sigma)
    raise ExhaustedRetries(f"template {name} never validated", attempts=max_attempts)


def random_almost_embedding(template: str, seed, move_budget: int = 3, max_attempts: int = 50) -> GraphDrawing:
    """A template almost embedding mutated by ``move_budget`` successful random moves.

    Each move is a component finger move (probability 2/3) or a bend jiggle,
    accepted only if the drawing stays an almost embedding.
    """
    rng = _rng(seed)
    f = template_drawing(template, rng)
    done = 0
    for _ in range(max_attempts * max(1, move_budget)):
        if done >= move_budget:
            break
        if rng.random() < 2 / 3:
            h = component_finger_move(f, rng)
        else:
            h = jiggle_move(f, rng)
        if h is not None:
            f = h
            done += 1
    if done < move_budget:
        raise ExhaustedRetries(f"only {done} of {move_budget} moves succeeded", attempts=max_attempts)
    return f


__all__ = [
    "FingerMoveSpec", "finger_move", "append_loop", "loop_around", "pivot_triangle",
    "gen_example_1_2", "gen_example_1_7", "gen_example_3_4", "gen_example_5_10",
    "gen_example_5_5b", "gen_example_6_3", "gen_example_6_3_drawing", "gen_example_6_6",
    "gen_example_6_6_drawing", "TriodicTuple", "CyclicTuple", "pentagon_k5_minus_45",
    "pentagon_k5", "square_with_diagonals", "triangle_with_centre", "random_drawing",
    "random_almost_embedding", "template_drawing", "component_finger_move", "jiggle_move",
    "tube_around", "automorphisms", "TEMPLATES", "WU_TRIANGLE",
]
