import itertools
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import UNIMODULAR, fx
from ehrchow import geometry, linalg
from ehrchow.geometry import PointClass
from oracles import brute_lattice_points, in_convex_hull

SQ2 = [(x, y) for x in range(3) for y in range(3)]


def test_square_with_duplicate():
    P = geometry.build_polytope([(0, 0), (1, 0), (0, 1), (1, 1), (1, 1)])
    assert P.dim == 2 and len(P.vertices) == 4 and len(P.facets) == 4


def test_segment_in_plane():
    P = geometry.build_polytope([(0, 0), (2, 2), (1, 1)])
    assert P.dim == 1
    assert set(P.vertices) == {(0, 0), (2, 2)}
    assert [list(d) for d in P.hull.directions] in ([[1, 1]], [[-1, -1]])
    assert geometry.classify_point(P, (1, 0)) is PointClass.OUTSIDE
    assert geometry.classify_point(P, (1, 1)) is PointClass.INTERIOR
    assert geometry.classify_point(P, (2, 2)) is PointClass.BOUNDARY


def test_square_vertices_by_extreme_point_test():
    P = geometry.build_polytope(SQ2)
    extreme = [p for p in SQ2 if not in_convex_hull([q for q in SQ2 if q != p], p)]
    assert sorted(P.vertices) == sorted(extreme)
    assert len(P.facets) == 4
    assert geometry.classify_point(P, (1, 1)) is PointClass.INTERIOR
    assert geometry.classify_point(P, (2, 1)) is PointClass.BOUNDARY


@pytest.mark.parametrize("k, count", [(0, 1), (1, 9), (2, 25)])
def test_square_dilations(k, count):
    P = geometry.build_polytope(SQ2)
    pts = geometry.enumerate_lattice_points(P, k)
    assert len(pts) == count
    assert pts == brute_lattice_points(list(P.vertices), k)


def test_unit_triangle_points():
    P = geometry.build_polytope([(0, 0), (1, 0), (0, 1)])
    assert geometry.enumerate_lattice_points(P, 1) == [(0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize("name", UNIMODULAR)
def test_enumeration_matches_brute_force(name):
    P = fx(name).triangulation.polytope
    for k in range(P.dim + 3 if P.dim < 3 else 2):
        assert geometry.enumerate_lattice_points(P, k) == brute_lattice_points(list(P.vertices), k)


def test_classification_partitions_box():
    P = geometry.build_polytope([(0, 0), (3, 1), (1, 3)])
    box = list(itertools.product(range(-1, 5), repeat=2))
    classes = {p: geometry.classify_point(P, p) for p in box}
    inside = sorted(p for p, c in classes.items() if c is not PointClass.OUTSIDE)
    assert inside == geometry.enumerate_lattice_points(P, 1)
    interior = sorted(p for p, c in classes.items() if c is PointClass.INTERIOR)
    assert interior == geometry.enumerate_lattice_points(P, 1, interior_only=True)


@pytest.mark.parametrize("simplex, expected", [
    ([(0, 0), (1, 0), (0, 1)], True),
    ([(0, 0), (2, 0), (0, 1)], False),
    ([(0, 0), (1, 1)], True),
    ([(0, 0), (2, 2)], False),
])
def test_unimodular_simplex_examples(simplex, expected):
    hull = geometry.AffineLattice.spanned_by([(0, 0), (1, 0), (0, 1)])
    assert geometry.is_unimodular_simplex(simplex, hull) is expected


small_pts = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)),
                     min_size=1, max_size=4, unique=True)


@given(small_pts)
def test_unimodular_iff_no_extra_lattice_points(pts):
    edges = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    if edges and linalg.rank(edges, 3) != len(edges):
        return
    P = geometry.build_polytope(pts)
    uni = geometry.is_unimodular_simplex(pts, geometry.AffineLattice.spanned_by(pts))
    assert uni == (geometry.count_lattice_points(P) == len(pts))


@given(st.lists(st.tuples(st.integers(-2, 3), st.integers(-2, 3)), min_size=1, max_size=6))
def test_random_polygons_against_brute_force(pts):
    P = geometry.build_polytope(pts)
    for k in (1, 2):
        assert geometry.enumerate_lattice_points(P, k) == brute_lattice_points(list(P.vertices), k)


def test_volumes():
    assert geometry.normalized_volume(geometry.build_polytope(SQ2)) == 8
    cube = list(itertools.product((0, 1), repeat=3))
    P = geometry.build_polytope(cube)
    assert len(P.facets) == 6 and len(P.vertices) == 8
    assert geometry.normalized_volume(P) == 6


def test_volume_in_sublattice_hull():
    # triangle lying in the plane x + y + z = 1
    P = geometry.build_polytope([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert P.dim == 2 and geometry.normalized_volume(P) == 1
    Q = geometry.build_polytope([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert geometry.normalized_volume(Q) == 4


def test_saturated_hull_coordinates():
    P = geometry.build_polytope([(0, 0, 0), (2, 4, 0), (0, 0, 3)])
    for p in geometry.enumerate_lattice_points(P, 1):
        assert all(isinstance(x, int) for x in P.hull.coords(p))
    assert geometry.saturate_lattice([[2, 4, 0], [0, 0, 3]]) == [(1, 2, 0), (0, 0, 1)]


def test_random_embedding_is_saturated():
    rng = random.Random(5)
    for n, m in ((1, 3), (2, 4), (3, 5)):
        a = geometry.random_saturated_embedding(n, m, rng)
        cols = [list(c) for c in zip(*a)]
        assert linalg.lattice_index(cols) == 1
    u = geometry.random_unimodular_matrix(4, rng)
    assert abs(sympy.Matrix(u).det()) == 1


def test_errors():
    with pytest.raises(geometry.GeometryError):
        geometry.build_polytope([(0, 0), (1,)])
    with pytest.raises(geometry.GeometryError):
        geometry.build_polytope([])
    P = geometry.build_polytope(SQ2)
    with pytest.raises(geometry.GeometryError):
        geometry.enumerate_lattice_points(P, -1)


def test_point_polytope():
    P = geometry.build_polytope([(3, 4)])
    assert P.dim == 0
    assert geometry.enumerate_lattice_points(P, 2) == [(6, 8)]
    assert geometry.classify_point(P, (3, 4)) is PointClass.INTERIOR
