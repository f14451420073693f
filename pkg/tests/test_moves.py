import random

import pytest
from hypothesis import given, settings, strategies as st

from almostembed.errors import CannotRoute, InfeasibleTarget
from almostembed.geometry import pt
from almostembed.graph import Grade, Graph, GraphDrawing, is_general_position, restrict_path, validate
from almostembed.invariants import W_f, w_f
from almostembed.moves import (
    TEMPLATES,
    FingerMoveSpec,
    append_loop,
    automorphisms,
    finger_move,
    gen_example_1_2,
    gen_example_1_7,
    gen_example_3_4,
    gen_example_5_10,
    gen_example_5_5b,
    pentagon_k5,
    pentagon_k5_minus_45,
    random_almost_embedding,
    random_drawing,
    triangle_with_centre,
    tube_around,
)
from almostembed.winding import ClosedPolyline, chain, winding_fraction, winding_number

small = st.integers(-3, 3)


def _loop_winding(a, b, O):
    return winding_number(ClosedPolyline(chain(a, b.reversed()).points), O)


@pytest.mark.parametrize("n", range(-4, 5))
def test_single_polyline_winds_n_times(n):
    O = pt(3, -1)
    l = gen_example_1_2(n, O)
    assert winding_number(l, O) == n


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_three_arcs_have_prescribed_pairwise_windings(n1, n2):
    l1, l2, l3 = gen_example_1_7(n1, n2)
    O = pt(2, -2)
    assert _loop_winding(l1, l2, O) == n1
    assert _loop_winding(l2, l3, O) == n2
    assert _loop_winding(l1, l3, O) == n1 + n2


@settings(max_examples=40, deadline=None)
@given(small, small, small, small)
def test_weak_almost_embedding_with_any_windings(n1, n2, n3, n4):
    f = gen_example_3_4(n1, n2, n3, n4)
    assert W_f(f).values == (n1, n2, n3, n4)
    assert validate(f).grade.at_least_weak()


@settings(max_examples=40, deadline=None)
@given(small, small, small, st.sampled_from([1, -1]))
def test_almost_embedding_with_unit_alternating_sum(n1, n2, n3, N):
    n4 = N + n1 - n2 + n3
    f = gen_example_5_10(n1, n2, n3, n4)
    assert validate(f).grade is Grade.ALMOST_EMBEDDING
    vec = W_f(f)
    assert vec.values == (n1, n2, n3, n4) and vec.W == N


def test_infeasible_alternating_sum_is_refused():
    with pytest.raises(InfeasibleTarget):
        gen_example_5_10(0, 0, 0, 0)
    with pytest.raises(InfeasibleTarget):
        gen_example_5_10(0, 1, 0, 2)


@pytest.mark.parametrize("n", range(-3, 4))
def test_k5_minus_edge_family(n):
    f = gen_example_5_5b(n)
    assert validate(f).grade is Grade.ALMOST_EMBEDDING
    assert w_f(f, (1, 2, 3), 5) == n
    assert w_f(f, (1, 2, 3), 4) == n + 1


def test_straight_pentagons_are_not_almost_embeddings():
    # without the hypothesis the difference of the two windings need not be odd
    f = pentagon_k5_minus_45()
    assert validate(f).grade is Grade.WEAK_ALMOST_EMBEDDING
    assert w_f(f, (1, 2, 3), 4) - w_f(f, (1, 2, 3), 5) == 0
    assert not validate(pentagon_k5()).is_almost_embedding


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("count", [1, 2, 3])
def test_finger_move_shifts_one_partial_winding(sign, count):
    f = triangle_with_centre()
    g = finger_move(f, FingerMoveSpec((1, 2), 4, sign, count))
    assert validate(g).grade.at_least_weak()
    for v in (3, 4):
        before = winding_fraction(f.edge_path(1, 2), f.vertices[v])
        after = winding_fraction(g.edge_path(1, 2), g.vertices[v])
        assert after - before == pytest.approx(sign * count if v == 4 else 0, abs=1e-9)
    assert w_f(g, (1, 2, 3), 4) == w_f(f, (1, 2, 3), 4) + sign * count
    assert w_f(g, (1, 2, 4), 3) == w_f(f, (1, 2, 4), 3)


def test_finger_move_argument_checks():
    f = triangle_with_centre()
    with pytest.raises(ValueError):
        finger_move(f, FingerMoveSpec((1, 2), 2, 1))
    with pytest.raises(ValueError):
        finger_move(f, FingerMoveSpec((1, 2), 3, 2))
    blocked = GraphDrawing(Graph.complete(4), f.vertices, {(1, 2): [(0, 0), (2, 1), (4, 0)]})
    with pytest.raises(CannotRoute):
        finger_move(blocked, FingerMoveSpec((1, 2), 4, 1))


def test_append_loop_and_tube():
    pts = append_loop([pt(0, 0), pt(1, 0)], [pt(2, 0), pt(2, 1)], 2)
    assert pts == [pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 1), pt(2, 0), pt(2, 1), pt(2, 0), pt(1, 0)]
    chain_pts = [pt(0, 0), pt(4, 0), pt(4, 4)]
    tube = ClosedPolyline(tube_around(chain_pts, 1))
    for q in chain_pts + [pt(2, 0), pt(4, 2)]:
        assert winding_number(tube, q) == 1


def test_random_drawing_is_deterministic_and_generic():
    g = Graph.complete(5)
    a = random_drawing(g, 7, grid_size=31)
    assert a == random_drawing(g, 7, grid_size=31)
    assert a != random_drawing(g, 8, grid_size=31)
    assert is_general_position(a).ok


@pytest.mark.parametrize("name", sorted(TEMPLATES))
def test_random_almost_embeddings_of_every_template(name):
    for seed in range(3):
        f = random_almost_embedding(name, seed)
        assert validate(f).grade is Grade.ALMOST_EMBEDDING
        assert f == random_almost_embedding(name, seed)


def test_template_automorphisms():
    assert len(automorphisms(Graph.complete(4))) == 24
    assert len(automorphisms(Graph.cycle(4))) == 8
    k33ab = TEMPLATES["K3,3-ab"][0]()
    for sigma in automorphisms(k33ab):
        s = dict(sigma)
        assert {s[1], s[4]} == {1, 4}


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_moves_keep_star_endpoints_fixed(seed):
    f = random_almost_embedding("star3", random.Random(seed), move_budget=4)
    for v in (1, 2, 3):
        path = restrict_path(f, (4, v))
        assert path.start == f.vertices[4] and path.end == f.vertices[v]
