"""Lattice triangulations as simplicial complexes.

A :class:`Triangulation` holds a table of lattice points and the maximal
simplices as sorted index tuples. The face set (downward closure, including
the empty simplex) is computed once at build time. Sub-triangulations such
as closed stars are re-indexed onto their own vertex points; maps between
triangulations are made by matching coordinates.
"""
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from . import geometry, linalg, lp
from .geometry import PointClass


class TriangulationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Triangulation:
    points: tuple
    maximal: tuple
    polytope: geometry.LatticePolytope
    faces: frozenset = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.points == other.points and self.maximal == other.maximal

    def __hash__(self):
        return hash((self.points, self.maximal))

    @property
    def dim(self):
        return self.polytope.dim

    @property
    def ambient_dim(self):
        return len(self.points[0])

    @cached_property
    def vertices(self):
        """Indices of points that are vertices of some simplex."""
        return tuple(sorted({v for s in self.maximal for v in s}))

    @cached_property
    def index(self):
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def coords(self):
        """Hull coordinates of every point."""
        return tuple(self.polytope.hull.coords(p) for p in self.points)

    @cached_property
    def point_classes(self):
        return tuple(geometry.classify_point(self.polytope, p) for p in self.points)

    @cached_property
    def interior_vertices(self):
        return tuple(v for v in self.vertices if self.point_classes[v] is PointClass.INTERIOR)

    @cached_property
    def boundary_vertices(self):
        return tuple(v for v in self.vertices if self.point_classes[v] is PointClass.BOUNDARY)

    def faces_of_size(self, r):
        return sorted(f for f in self.faces if len(f) == r)

    def simplex_points(self, s):
        return [self.points[i] for i in s]


def _face_closure(maximal):
    faces = set()
    for s in maximal:
        for r in range(len(s) + 1):
            faces.update(itertools.combinations(s, r))
    return frozenset(faces)


def build_triangulation(points, maximal_simplices, polytope=None):
    """Assemble a triangulation; validity is checked separately by :func:`validate_triangulation`."""
    points = tuple(tuple(int(x) for x in p) for p in points)
    if not points:
        raise TriangulationError("empty point table")
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise TriangulationError("inconsistent coordinate lengths")
    if len(set(points)) != len(points):
        raise TriangulationError("duplicate points")
    maximal = []
    for s in maximal_simplices:
        s = tuple(sorted(int(i) for i in s))
        if not s:
            raise TriangulationError("empty maximal simplex")
        if any(i < 0 or i >= len(points) for i in s):
            raise TriangulationError(f"simplex {list(s)} has an index out of range")
        if len(set(s)) != len(s):
            raise TriangulationError(f"simplex {list(s)} repeats a vertex")
        base = points[s[0]]
        edges = [[a - b for a, b in zip(points[i], base)] for i in s[1:]]
        if edges and linalg.rank(edges, n) != len(edges):
            raise TriangulationError(f"simplex {list(s)} is degenerate")
        maximal.append(s)
    maximal = tuple(sorted(set(maximal)))
    if polytope is None:
        polytope = geometry.build_polytope(points)
    return Triangulation(points, maximal, polytope, _face_closure(maximal))


def subtriangulation(T, simplices, polytope=None):
    """Triangulation on the vertices of ``simplices`` (indices of ``T``), re-indexed."""
    verts = sorted({v for s in simplices for v in s})
    new = {v: i for i, v in enumerate(verts)}
    pts = [T.points[v] for v in verts]
    return build_triangulation(pts, [[new[v] for v in s] for s in simplices], polytope)


@dataclass(frozen=True)
class ValidationReport:
    union: bool
    proper_intersection: bool
    closure: bool
    improper_pairs: tuple = ()

    @property
    def valid(self):
        return self.union and self.proper_intersection and self.closure


def _improperly_intersecting(T, s, t):
    """Whether ``conv(s) ∩ conv(t)`` is larger than ``conv(s ∩ t)``.

    Barycentric coordinates on ``s`` are unique, so the intersection is
    improper exactly when some common point puts positive weight on a vertex
    of ``s`` outside ``t``. Decided by one exact LP.
    """
    shared = set(s) & set(t)
    outside = [i for i, v in enumerate(s) if v not in shared]
    if not outside:
        return False
    ns, nt = len(s), len(t)
    N = T.ambient_dim
    A_eq = [[1] * ns + [0] * nt, [0] * ns + [1] * nt]
    b_eq = [1, 1]
    for j in range(N):
        A_eq.append([T.points[v][j] for v in s] + [-T.points[v][j] for v in t])
        b_eq.append(0)
    c = [-1 if i in outside else 0 for i in range(ns)] + [0] * nt
    res = lp.linprog(c, A_eq=A_eq, b_eq=b_eq)
    return res.success and res.fun < 0


def _boxes_disjoint(T, s, t):
    for j in range(T.ambient_dim):
        a = [T.points[v][j] for v in s]
        b = [T.points[v][j] for v in t]
        if max(a) < min(b) or max(b) < min(a):
            return True
    return False


def _facet_separated(T, s, t):
    """Some facet hyperplane of ``s`` has ``t`` weakly on its far side, touching only shared vertices.

    Then ``conv(s) ∩ conv(t)`` lies in that hyperplane and equals the face
    spanned by the shared vertices, so the pair meets properly.
    """
    d = T.dim
    a = [[T.coords[v][i] for v in s] for i in range(d)] + [[1] * (d + 1)]
    try:
        bary = [linalg.solve(a, list(T.coords[v]) + [1]) for v in t]
    except ValueError:
        return False
    shared = set(s) & set(t)
    for j in range(d + 1):
        col = [b[j] for b in bary]
        if all(x <= 0 for x in col) and all(x < 0 or v in shared for x, v in zip(col, t)):
            return True
    return False


def validate_triangulation(T):
    """Check the union, proper-intersection and closure properties."""
    d = T.dim
    pure = all(len(s) == d + 1 for s in T.maximal)
    inside = all(geometry.classify_point(T.polytope, T.points[v]) is not PointClass.OUTSIDE
                 for v in T.vertices)
    union = False
    if pure and inside:
        total = sum(geometry.simplex_volume([T.coords[v] for v in s]) for s in T.maximal)
        union = total == geometry.normalized_volume(T.polytope)
    bad = []
    for s, t in itertools.combinations(T.maximal, 2):
        if _boxes_disjoint(T, s, t):
            continue
        if pure and (_facet_separated(T, s, t) or _facet_separated(T, t, s)):
            continue
        if _improperly_intersecting(T, s, t) or _improperly_intersecting(T, t, s):
            bad.append((s, t))
    return ValidationReport(union, not bad, True, tuple(bad))


def is_unimodular(T):
    """All maximal simplices unimodular in ``aff(P)`` and every lattice point of ``P`` used."""
    hull = T.polytope.hull
    if not all(geometry.is_unimodular_simplex(T.simplex_points(s), hull) for s in T.maximal):
        return False
    lattice = set(geometry.enumerate_lattice_points(T.polytope, 1))
    return lattice == {T.points[v] for v in T.vertices}


def f_vector(T):
    """``(f_{-1}, f_0, ..., f_d)``: number of faces with ``0, 1, ..., d+1`` vertices."""
    counts = [0] * (T.dim + 2)
    for f in T.faces:
        if len(f) < len(counts):
            counts[len(f)] += 1
    return tuple(counts)


def h_vector(T, full=False):
    """h-vector of the triangulation as a ``d``-dimensional simplicial complex.

    ``h_k = sum_i (-1)^(k-i) C(d+1-i, k-i) f_{i-1}``. Returns ``h_0..h_d``;
    ``h_{d+1}`` (zero for a triangulated ball) is included when ``full``.
    """
    f = f_vector(T)
    D = T.dim + 1
    h = [sum((-1) ** (k - i) * comb(D - i, k - i) * f[i] for i in range(k + 1))
         for k in range(D + 1)]
    return tuple(h if full else h[:D])


def closed_star(T, p):
    """Closed star of vertex ``p``: all maximal simplices containing it, with their faces.

    The returned triangulation's polytope is the convex hull of the star's
    vertices; the star itself need not be convex.
    """
    if p not in T.vertices:
        raise TriangulationError(f"point {p} is not a vertex")
    return subtriangulation(T, [s for s in T.maximal if p in s])


def star_intersection(T, ps):
    """Sub-triangulation on the maximal simplices containing every vertex in ``ps``."""
    cells = [s for s in T.maximal if all(p in s for p in ps)]
    if not cells:
        raise TriangulationError(f"closed stars of {list(ps)} share no maximal simplex")
    return subtriangulation(T, cells)


def covers_hull(T):
    """Whether the maximal simplices fill the convex hull of the vertices (volume test)."""
    if any(len(s) != T.dim + 1 for s in T.maximal):
        return False
    total = sum(geometry.simplex_volume([T.coords[v] for v in s]) for s in T.maximal)
    return total == geometry.normalized_volume(T.polytope)


def induced_subtriangulation(T, Q):
    """Triangulation of the polytope ``Q`` by the simplices of ``T`` it contains."""
    inside = {v for v in T.vertices
              if geometry.classify_point(Q, T.points[v]) is not PointClass.OUTSIDE}
    k = Q.dim + 1
    cells = [f for f in T.faces if len(f) == k and set(f) <= inside]
    if not cells:
        raise TriangulationError("no simplex of T lies in Q")
    sub = subtriangulation(T, cells, polytope=Q)
    total = sum(geometry.simplex_volume([Q.hull.coords(p) for p in sub.simplex_points(s)])
                for s in sub.maximal)
    if total != geometry.normalized_volume(Q):
        raise TriangulationError("simplices of T inside Q do not cover Q")
    return sub


def is_star(T):
    """Whether some interior vertex lies in every maximal simplex."""
    common = set(T.maximal[0]).intersection(*T.maximal[1:])
    return any(T.point_classes[v] is PointClass.INTERIOR for v in common)


def map_triangulation(T, matrix, translation):
    """Image of ``T`` under the integer affine map ``x -> matrix x + translation``."""
    pts = [geometry.apply_affine(matrix, translation, p) for p in T.points]
    return build_triangulation(pts, T.maximal)
