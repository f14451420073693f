import math
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from oracles import orient_sign, segment_params
from almostembed.errors import DegeneratePoint
from almostembed.geometry import (
    CrossingKind,
    Q,
    format_q,
    oriented_angle,
    orientation,
    point_on_segment,
    pt,
    segment_crossing,
)

coord = st.integers(-30, 30)
point = st.tuples(coord, coord)


def test_rational_round_trip_strings():
    assert format_q(mpq(3, 7)) == "3/7"
    assert format_q(-2) == "-2"
    assert format_q(0) == "0"
    assert format_q("6/4") == "3/2"
    assert Q(Fraction(1, 3)) == mpq(1, 3)
    with pytest.raises(TypeError):
        Q(0.5)


@given(st.integers(-10**12, 10**12), st.integers(1, 10**12))
def test_format_parse_is_lossless(num, den):
    q = mpq(num, den)
    assert Q(format_q(q)) == q


def test_orientation_basic():
    assert orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == -1
    assert orientation(pt(0, 0), pt(1, 1), pt(3, 3)) == 0


def test_orientation_tiny_rationals_are_exact():
    a, b = pt(0, 0), pt(1, mpq(1, 10**30))
    assert orientation(a, b, pt(2, mpq(2, 10**30))) == 0
    assert orientation(a, b, pt(2, mpq(2, 10**30) + mpq(1, 10**60))) == 1


@given(point, point, point)
def test_orientation_matches_fraction_oracle(a, b, c):
    assert orientation(pt(*a), pt(*b), pt(*c)) == orient_sign(a, b, c)


@given(point, point, point)
def test_orientation_antisymmetric(a, b, c):
    A, B, C = pt(*a), pt(*b), pt(*c)
    assert orientation(A, B, C) == -orientation(B, A, C) == orientation(B, C, A)


def test_point_on_segment():
    s = (pt(0, 0), pt(4, 2))
    assert point_on_segment(pt(2, 1), s)
    assert point_on_segment(pt(0, 0), s)
    assert not point_on_segment(pt(6, 3), s)
    assert not point_on_segment(pt(2, mpq(1) + mpq(1, 10**9)), s)


def test_segment_crossing_kinds():
    x = segment_crossing((pt(0, 0), pt(2, 2)), (pt(0, 2), pt(2, 0)))
    assert x.kind is CrossingKind.TRANSVERSAL and x.point == pt(1, 1)
    assert x.sign == -1  # det((1, 1), (1, -1)) = -2
    touch = segment_crossing((pt(0, 0), pt(2, 0)), (pt(1, 0), pt(1, 3)))
    assert touch.kind is CrossingKind.DEGENERATE and touch.point == pt(1, 0)
    overlap = segment_crossing((pt(0, 0), pt(2, 0)), (pt(1, 0), pt(3, 0)))
    assert overlap.kind is CrossingKind.DEGENERATE
    assert segment_crossing((pt(0, 0), pt(1, 0)), (pt(0, 1), pt(1, 1))).kind is CrossingKind.DISJOINT


@given(point, point, point, point)
def test_segment_crossing_agrees_with_parametric_oracle(a, b, c, d):
    if a == b or c == d:
        return
    x = segment_crossing((pt(*a), pt(*b)), (pt(*c), pt(*d)))
    tu = segment_params(a, b, c, d)
    interior = tu is not None and 0 < tu[0] < 1 and 0 < tu[1] < 1
    endpoint_contact = tu is not None and 0 <= tu[0] <= 1 and 0 <= tu[1] <= 1 and not interior
    if x.kind is CrossingKind.TRANSVERSAL:
        assert interior
        det = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
        assert x.sign == (1 if det > 0 else -1)
    elif interior:
        # an interior crossing is only degenerate when an endpoint sits on the other segment
        assert x.kind is CrossingKind.DEGENERATE
    if endpoint_contact:
        assert x.kind is CrossingKind.DEGENERATE


@given(point, point, point, point)
def test_segment_crossing_sign_antisymmetric(a, b, c, d):
    if a == b or c == d:
        return
    x = segment_crossing((pt(*a), pt(*b)), (pt(*c), pt(*d)))
    y = segment_crossing((pt(*c), pt(*d)), (pt(*a), pt(*b)))
    assert x.kind is y.kind
    if x.kind is CrossingKind.TRANSVERSAL:
        assert x.sign == -y.sign and x.point == y.point


def test_oriented_angle_range_and_values():
    O = pt(0, 0)
    assert oriented_angle(O, pt(1, 0), pt(0, 1)) == pytest.approx(math.pi / 2)
    assert oriented_angle(O, pt(0, 1), pt(1, 0)) == pytest.approx(-math.pi / 2)
    assert oriented_angle(O, pt(1, 0), pt(-1, 0)) == math.pi
    assert oriented_angle(O, pt(1, 0), pt(3, 0)) == 0.0
    with pytest.raises(DegeneratePoint):
        oriented_angle(O, O, pt(1, 1))


@given(point, point)
def test_oriented_angle_in_half_open_interval(a, b):
    if a == (0, 0) or b == (0, 0):
        return
    t = oriented_angle(pt(0, 0), pt(*a), pt(*b))
    assert -math.pi < t <= math.pi
