from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hellylab.errors import InputError
from hellylab.geometry import (
    Box,
    BoxFamily,
    PointSet,
    count_S_intersecting_tuples,
    intersect_tuple,
    is_S_intersecting,
    max_S_intersecting_subfamily,
    point_membership,
    rational,
    s_pair_graph,
)
from hellylab.constructions import lower_bound_family

TWO = BoxFamily.from_intervals([[(0, 2), (1, 3)]])


def test_rational_parsing():
    assert rational("3/4") == Fraction(3, 4)
    assert rational(5) == 5
    assert rational(" -2 ") == -2
    with pytest.raises(InputError):
        rational("x")
    with pytest.raises(InputError):
        rational(True)


def test_box_rejects_inverted_bounds():
    with pytest.raises(InputError):
        Box((2,), (1,))


def test_degenerate_box_allowed():
    b = Box((1, 1), (1, 3))
    assert b.contains((1, 2)) and not b.contains((Fraction(3, 2), 2))


def test_intersect_examples():
    assert intersect_tuple(TWO, [1, 2]) == Box((1,), (2,))
    assert intersect_tuple(TWO, [2]) == TWO.box(2)
    assert intersect_tuple(BoxFamily.from_intervals([[(0, 1), (2, 3)]]), [1, 2]) is None


def test_intersect_touching_is_nonempty():
    F = BoxFamily.from_intervals([[(0, 1), (1, 2)], [(0, 1), (1, 2)]])
    assert intersect_tuple(F, [1, 2]) == Box((1, 1), (1, 1))


def test_invalid_index():
    with pytest.raises(InputError):
        intersect_tuple(TWO, [3])
    with pytest.raises(InputError):
        intersect_tuple(TWO, [0])


def test_membership_examples(w4):
    assert point_membership(TWO, [1]) == (1, 2)
    assert point_membership(TWO, [5]) == ()
    family, _ = w4
    assert point_membership(family, [Fraction(5, 2), 5]) == (1, 2)


def test_is_S_intersecting_examples(w4):
    assert is_S_intersecting(TWO, [1, 2], PointSet(1, [[2]]))
    assert not is_S_intersecting(TWO, [1, 2], PointSet(1, []))
    assert not is_S_intersecting(TWO, [1], PointSet(1, []))
    family, S = w4
    for t in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
        assert not is_S_intersecting(family, t, S)


def test_pair_graph_examples(w4):
    family, S = w4
    assert s_pair_graph(family, S) == {j: {1, 2, 3, 4} - {j} for j in range(1, 5)}
    assert s_pair_graph(family, PointSet(2, [])) == {j: set() for j in range(1, 5)}
    L, LS, _ = lower_bound_family(9)
    g = s_pair_graph(L, LS)
    assert all(len(nb) == 11 for nb in g.values())


def test_tuple_counts(w4):
    family, S = w4
    assert count_S_intersecting_tuples(family, S, 2) == 6
    assert count_S_intersecting_tuples(family, S, 3) == 0
    assert count_S_intersecting_tuples(family, PointSet(2, []), 2) == 0
    L, LS, _ = lower_bound_family(9)
    assert count_S_intersecting_tuples(L, LS, 2) == 66


def test_max_subfamily(w4):
    family, S = w4
    size, members, point = max_S_intersecting_subfamily(family, S)
    assert size == 2 and len(members) == 2 and point in S.points
    assert max_S_intersecting_subfamily(family, PointSet(2, []))[0] == 0
    L, LS, _ = lower_bound_family(9)
    assert max_S_intersecting_subfamily(L, LS)[0] == 8


def test_dimension_mismatch():
    with pytest.raises(InputError):
        is_S_intersecting(TWO, [1], PointSet(2, [[0, 0]]))


intervals = st.tuples(st.integers(0, 6), st.integers(0, 6)).map(sorted)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(intervals, min_size=2, max_size=2), min_size=1, max_size=6))
def test_intersection_equals_pointwise_membership(boxes):
    F = BoxFamily.from_bounds([([a[0], b[0]], [a[1], b[1]]) for a, b in boxes])
    grid = [(Fraction(x, 2), Fraction(y, 2)) for x in range(13) for y in range(13)]
    inter = intersect_tuple(F, range(1, len(F) + 1))
    for p in grid:
        inside = all(b.contains(p) for b in F.boxes)
        assert inside == (inter is not None and inter.contains(p))
