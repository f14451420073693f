import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import projection_linking
from samplers import random_cycle_pair3, random_six_points
from almostembed.errors import CyclesIntersect, DegenerateConfiguration, NotGenericCone
from almostembed.geometry import pt3
from almostembed.space3 import (
    ClosedPolyline3,
    SpatialK6Drawing,
    cgs_check,
    gen_example_8_2a,
    linking_number,
    linking_numbers_all_apexes,
    moment_curve_points,
    triangle_partitions,
)

SQUARE = [pt3(0, 0, 0), pt3(1, 0, 0), pt3(1, 1, 0), pt3(0, 1, 0)]
# rises through the square at (1/4, 1/8) and returns outside it
THREAD = [pt3("1/4", "1/8", -1), pt3("1/4", "1/8", 1), pt3("5/2", "3/7", 1), pt3("5/2", "3/7", -1)]


def test_hopf_link():
    assert linking_number(SQUARE, THREAD) == 1
    assert linking_number(THREAD, SQUARE) == 1
    assert linking_number(ClosedPolyline3(SQUARE).reversed(), THREAD) == -1
    assert projection_linking(SQUARE, THREAD) == 1


def test_unlinked_and_intersecting_curves():
    far = [pt3(x + 5, y, z) for x, y, z in THREAD]
    assert linking_number(SQUARE, far) == 0
    with pytest.raises(CyclesIntersect):
        linking_number(SQUARE, [pt3(1, 0, 0), pt3(3, 0, 1), pt3(3, 0, -1)])


def test_curve_through_the_apex_fan_is_avoided():
    # the thread pierces the square at its centre, on the spoke from vertex 0 to vertex 2
    thread = [pt3("1/2", "1/2", -1), pt3("1/2", "1/2", 1), pt3(3, "1/2", 1), pt3(3, "1/2", -1)]
    with pytest.raises(NotGenericCone):
        linking_number(SQUARE, thread, apex=0)
    assert linking_number(SQUARE, thread) == 1


def test_degenerate_polylines_are_rejected():
    with pytest.raises(ValueError):
        ClosedPolyline3([pt3(0, 0, 0), pt3(1, 0, 0), pt3(0, 0, 0)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_linking_number_matches_projection_oracle(seed):
    c1, c2 = random_cycle_pair3(random.Random(seed))
    try:
        expected = projection_linking(c1.points, c2.points)
    except ValueError:
        assume(False)
    assert linking_number(c1, c2) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_linking_number_is_symmetric_and_apex_free(seed):
    c1, c2 = random_cycle_pair3(random.Random(seed))
    values = linking_numbers_all_apexes(c1, c2)
    assert len(set(values)) == 1
    assert linking_number(c2, c1) == values[0]
    assert linking_number(c1.reversed(), c2) == -values[0]


def test_ten_partitions():
    parts = triangle_partitions()
    assert len(parts) == 10
    assert all(T1[0] == 1 and sorted(T1 + T2) == [1, 2, 3, 4, 5, 6] for T1, T2 in parts)


def test_moment_curve_has_one_linked_pair():
    rep = cgs_check(moment_curve_points())
    assert rep.odd_pairs == [((1, 3, 5), (2, 4, 6))]
    assert rep.values[((1, 3, 5), (2, 4, 6))] == -1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_six_points_always_have_an_odd_number_of_linked_pairs(seed):
    rep = cgs_check(random_six_points(random.Random(seed)))
    assert len(rep.odd_pairs) % 2 == 1
    assert rep.parity_sum == 1


def test_six_point_configuration_checks():
    with pytest.raises(DegenerateConfiguration):
        cgs_check(moment_curve_points()[:5])
    with pytest.raises(DegenerateConfiguration):
        cgs_check([pt3(0, 0, 0), pt3(1, 0, 0), pt3(0, 1, 0), pt3(1, 1, 0), pt3(0, 0, 1), pt3(5, 3, 2)])


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_k6_drawing_with_prescribed_linking(n):
    f, pair = gen_example_8_2a(n)
    assert f.is_almost_embedding()
    table = f.linking_table()
    assert table[pair] == 2 * n + 1
    assert all(v == 0 for k, v in table.items() if k != pair)


def test_spatial_drawing_checks_endpoints():
    V = {i + 1: p for i, p in enumerate(moment_curve_points())}
    with pytest.raises(ValueError):
        SpatialK6Drawing(V, {(1, 2): [V[1], pt3(0, 0, 0), V[3]]})
    f = SpatialK6Drawing(V, {(2, 1): [V[2], pt3(1, 1, 1), V[1]]})
    assert f.edge_path(1, 2) == (V[1], pt3(1, 1, 1), V[2])
    bad = SpatialK6Drawing(V, {(1, 2): [V[1], V[5], V[2]]})
    assert not bad.is_almost_embedding()
