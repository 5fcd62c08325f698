import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import UNIMODULAR, fx
from ehrchow import ehrhart, geometry, triangulation as tr
from oracles import brute_lattice_points, delta_from_series

ALL = UNIMODULAR + ["NONREGULAR"]


@pytest.mark.parametrize("points, delta", [
    ([(x, y) for x in range(3) for y in range(3)], (1, 6, 1)),
    ([(x, y) for x in range(4) for y in range(3)], (1, 9, 2)),
    ([(0, 0), (1, 0), (0, 1)], (1, 0, 0)),
    ([(0,), (2,)], (1, 1)),
    (list(itertools.product((-1, 1), repeat=3)), (1, 23, 23, 1)),
])
def test_delta_examples(points, delta):
    assert ehrhart.delta_vector(geometry.build_polytope(points)) == delta


@pytest.mark.parametrize("name", ALL)
def test_delta_matches_series_oracle(name):
    P = fx(name).triangulation.polytope
    d = P.dim
    counts = [len(brute_lattice_points(list(P.vertices), k)) for k in range(d + 1)] if d < 3 else \
        [geometry.count_lattice_points(P, k) for k in range(d + 1)]
    assert ehrhart.delta_vector(P) == delta_from_series(counts, d)


@pytest.mark.parametrize("name", ALL)
def test_delta_identities(name):
    T = fx(name).triangulation
    P = T.polytope
    d = P.dim
    delta = ehrhart.delta_vector(P)
    assert delta[0] == 1
    assert delta[1] == geometry.count_lattice_points(P) - (d + 1)
    assert delta[d] == geometry.count_interior_points(P)
    assert sum(delta) == geometry.normalized_volume(P)
    if tr.is_unimodular(T):
        assert sum(delta) == len(T.maximal)


@pytest.mark.parametrize("name", ALL)
def test_reciprocity(name):
    assert ehrhart.reciprocity_check(fx(name).triangulation.polytope)


@pytest.mark.parametrize("name", UNIMODULAR)
def test_h_equals_delta(name):
    assert ehrhart.h_equals_delta_check(fx(name).triangulation)


def test_h_equals_delta_needs_unimodular():
    with pytest.raises(ValueError):
        ehrhart.h_equals_delta_check(fx("NONREGULAR").triangulation)


def test_ehrhart_polynomial_of_square():
    P = geometry.build_polytope([(0, 0), (2, 0), (0, 2), (2, 2)])
    data = ehrhart.ehrhart_counts(P)
    assert data.counts == (1, 9, 25, 49, 81)
    assert data.poly == (1, 4, 4)
    assert data.evaluate(-1) == 1
    assert data.evaluate(Fraction(1, 2)) == 4


@given(st.lists(st.tuples(st.integers(-2, 3), st.integers(-2, 3)), min_size=3, max_size=6))
def test_random_polygons(pts):
    P = geometry.build_polytope(pts)
    if P.dim < 2:
        return
    delta = ehrhart.delta_vector(P)
    assert all(x >= 0 for x in delta)
    assert ehrhart.reciprocity_check(P)
    # Pick: area = interior + boundary/2 - 1, twice the area is the normalized volume
    n = geometry.count_lattice_points(P)
    i = geometry.count_interior_points(P)
    assert sum(delta) == 2 * i + (n - i) - 2


def test_unimodality_helpers():
    assert ehrhart.is_unimodal((1, 3, 3, 1))
    assert ehrhart.is_unimodal((1, 9, 2))
    assert ehrhart.is_unimodal((1, 0, 0))
    assert not ehrhart.is_unimodal((1, 0, 1))
    assert ehrhart.increasing_to_middle((1, 9, 2))
    assert ehrhart.increasing_to_middle((1, 2, 3, 1))
    assert not ehrhart.increasing_to_middle((1, 3, 2, 1, 0))


def test_raw_counts_and_too_few_counts():
    assert ehrhart.delta_from_counts([1, 2, 2], 2) == (1, -1, -1)
    with pytest.raises(ValueError):
        ehrhart.ehrhart_counts(geometry.build_polytope([(0, 0), (1, 0), (0, 1)]), m=1)
