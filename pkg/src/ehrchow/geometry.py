"""Exact lattice geometry: affine lattices, lattice polytopes, point counting.

A polytope is stored in *hull coordinates*: integer coordinates with respect
to a saturated basis of the direction lattice of its affine hull. Because
the basis is saturated, lattice points of the affine hull are exactly the
integer coordinate vectors, and determinants in hull coordinates are lattice
(normalized) volumes.
"""
import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg


class GeometryError(ValueError):
    pass


class PointClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def saturate_lattice(vectors):
    """Basis of ``span_R(vectors) ∩ Z^N`` (Hermite normal form, possibly empty)."""
    return [tuple(v) for v in linalg.saturate_lattice(vectors)]


@dataclass(frozen=True)
class AffineLattice:
    """Lattice points of an affine subspace: ``base + Z-span(directions)``."""

    base: tuple
    directions: tuple
    _sel: tuple = field(default=(), compare=False, repr=False)
    _inv: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def spanned_by(cls, points):
        points = [tuple(p) for p in points]
        base = points[0]
        dirs = tuple(saturate_lattice([_sub(p, base) for p in points[1:]]))
        n = len(base)
        if dirs:
            sel = tuple(linalg._independent_columns([list(d) for d in dirs], n))
            sub = [[d[j] for d in dirs] for j in sel]
            inv = _inverse(sub)
        else:
            sel, inv = (), ()
        return cls(base, dirs, sel, inv)

    @property
    def dim(self):
        return len(self.directions)

    @property
    def ambient_dim(self):
        return len(self.base)

    def linear_coords(self, v):
        """Coordinates of a direction vector, or ``None`` if outside the span."""
        if not self.directions:
            return () if not any(v) else None
        c = tuple(sum((row[k] * v[j] for k, j in enumerate(self._sel)), Fraction(0))
                  for row in self._inv)
        for j in range(len(v)):
            if sum(ci * d[j] for ci, d in zip(c, self.directions)) != v[j]:
                return None
        return tuple(int(x) if x.denominator == 1 else x for x in c)

    def coords(self, p, k=1):
        """Coordinates of ``p`` relative to the dilated base ``k * base``."""
        return self.linear_coords(tuple(a - k * b for a, b in zip(p, self.base)))

    def point(self, coords, k=1):
        out = [k * b for b in self.base]
        for c, d in zip(coords, self.directions):
            for j, x in enumerate(d):
                out[j] += c * x
        return tuple(out)

    def contains(self, p):
        c = self.coords(p)
        return c is not None and all(isinstance(x, int) for x in c)


def _inverse(a):
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, piv = linalg.rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise GeometryError("singular")
    return tuple(tuple(r[n:]) for r in red)


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def facets_of(points):
    """Irredundant facet inequalities ``a.x <= b`` of a full-dimensional point set.

    Double description: the facets are the extreme rays of the cone
    ``{(a, b) : b - a.p >= 0 for every p}``, which is pointed because the
    points affinely span the space. Rays are kept as primitive integer
    vectors and adjacency is tested combinatorially.
    """
    pts = sorted(set(tuple(p) for p in points))
    d = len(pts[0])
    if d == 0:
        return []
    cons = [tuple(-x for x in p) + (1,) for p in pts]
    # initial simplicial cone from d+1 independent constraints
    _, piv = linalg.rref([list(col) for col in zip(*cons)], len(cons))
    if len(piv) != d + 1:
        raise GeometryError("points are not full-dimensional")
    init = list(piv)
    inv = _inverse([list(cons[i]) for i in init])
    rays = []
    for j in range(d + 1):
        col = [inv[i][j] for i in range(d + 1)]
        ray = linalg.integer_rows([col])[0]
        rays.append(_primitive(ray))
    zeros = [frozenset(init[i] for i in range(d + 1) if i != j) for j in range(d + 1)]
    for idx, con in enumerate(cons):
        if idx in init:
            continue
        vals = [sum(a * b for a, b in zip(con, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays, new_zeros = [], []
        for i in pos + zer:
            new_rays.append(rays[i])
            new_zeros.append(zeros[i] | {idx} if vals[i] == 0 else zeros[i])
        for i in pos:
            for j in neg:
                common = zeros[i] & zeros[j]
                if len(common) < d - 1:
                    continue
                if any(k != i and k != j and common <= zeros[k] for k in range(len(rays))):
                    continue
                vi, vj = vals[i], vals[j]
                ray = tuple(vi * b - vj * a for a, b in zip(rays[i], rays[j]))
                new_rays.append(_primitive(ray))
                new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros
    facets = set()
    for r in rays:
        a, b = r[:-1], r[-1]
        if not any(a):
            continue
        g = 0
        for x in a:
            g = gcd(g, x)
        facets.add((tuple(x // g for x in a), b // g))
    return sorted(facets)


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points, with facets in hull coordinates."""

    vertices: tuple
    hull: AffineLattice
    facets: tuple
    vertex_coords: tuple = field(compare=False, repr=False, default=())

    @property
    def dim(self):
        return self.hull.dim

    @property
    def ambient_dim(self):
        return self.hull.ambient_dim

    def bounding_box(self, k=1):
        """Integer box in hull coordinates containing ``kP``."""
        d = self.dim
        lo = [k * min(c[i] for c in self.vertex_coords) for i in range(d)]
        hi = [k * max(c[i] for c in self.vertex_coords) for i in range(d)]
        return lo, hi


def build_polytope(points):
    """Lattice polytope ``conv(points)``."""
    points = [tuple(int(x) for x in p) for p in points]
    if not points:
        raise GeometryError("no points")
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise GeometryError("inconsistent coordinate lengths")
    points = sorted(set(points))
    hull = AffineLattice.spanned_by(points)
    coords = {p: hull.coords(p) for p in points}
    d = hull.dim
    if d == 0:
        return LatticePolytope((points[0],), hull, (), ((),))
    facets = tuple(facets_of(coords.values()))
    verts = []
    for p in points:
        c = coords[p]
        tight = [a for a, b in facets if sum(x * y for x, y in zip(a, c)) == b]
        if tight and linalg.rank([list(a) for a in tight], d) == d:
            verts.append(p)
    return LatticePolytope(tuple(verts), hull, facets, tuple(coords[v] for v in verts))


def _classify_coords(P, c, k):
    if c is None or not all(isinstance(x, int) for x in c):
        return PointClass.OUTSIDE
    tie = False
    for a, b in P.facets:
        v = sum(x * y for x, y in zip(a, c))
        if v > k * b:
            return PointClass.OUTSIDE
        if v == k * b:
            tie = True
    return PointClass.BOUNDARY if tie else PointClass.INTERIOR


def classify_point(P, p, k=1):
    """Position of the lattice point ``p`` relative to the dilation ``kP``.

    Interior and boundary are relative to ``aff(kP)``; points off the affine
    hull are outside.
    """
    if len(p) != P.ambient_dim:
        raise GeometryError("dimension mismatch")
    if k == 0:
        return PointClass.INTERIOR if not any(p) else PointClass.OUTSIDE
    return _classify_coords(P, P.hull.coords(p, k), k)


def enumerate_lattice_points(P, k=1, interior_only=False):
    """Sorted lattice points of ``kP``; ``0P`` is the single point at the origin."""
    if k < 0:
        raise GeometryError("negative dilation")
    if k == 0:
        return [] if interior_only and P.dim > 0 else [tuple([0] * P.ambient_dim)]
    lo, hi = P.bounding_box(k)
    out = []
    for c in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        cls = _classify_coords(P, c, k)
        if cls is PointClass.INTERIOR or (cls is PointClass.BOUNDARY and not interior_only):
            out.append(P.hull.point(c, k))
    return sorted(out)


def count_lattice_points(P, k=1):
    return len(enumerate_lattice_points(P, k))


def count_interior_points(P, k=1):
    return len(enumerate_lattice_points(P, k, interior_only=True))


def is_unimodular_simplex(simplex, hull):
    """Whether the vertices of ``simplex`` extend to an affine basis of ``hull``'s lattice."""
    simplex = [tuple(p) for p in simplex]
    if len(simplex) <= 1:
        return True
    edges = [_sub(p, simplex[0]) for p in simplex[1:]]
    coords = [hull.linear_coords(e) for e in edges]
    if any(c is None for c in coords):
        raise GeometryError("simplex not contained in the affine hull")
    if linalg.rank([list(c) for c in coords], hull.dim) != len(edges):
        raise GeometryError("affinely dependent vertices")
    if len(edges) == hull.dim:
        return abs(linalg.det(coords)) == 1
    # lower-dimensional: edges must span a saturated sublattice
    return linalg.lattice_index([list(c) for c in coords]) == 1


def simplex_volume(coords):
    """Normalized volume ``|det|`` of a full-dimensional simplex given in hull coordinates."""
    if len(coords) == 1:
        return 1
    base = coords[0]
    return abs(linalg.det([_sub(c, base) for c in coords[1:]]))


def _orient(face, q):
    base = face[0]
    return linalg.det([_sub(p, base) for p in face[1:]] + [_sub(q, base)])


def placing_triangulation(coords):
    """Placing triangulation of a full-dimensional point configuration.

    Points are inserted in the given order; each point outside the current
    hull is joined to every boundary facet it sees strictly. Returns a list
    of index tuples into ``coords``.
    """
    coords = [tuple(c) for c in coords]
    d = len(coords[0])
    if d == 0:
        return [(0,)]
    first = [0]
    for i in range(1, len(coords)):
        trial = first + [i]
        edges = [_sub(coords[j], coords[first[0]]) for j in trial[1:]]
        if linalg.rank([list(e) for e in edges], d) == len(edges):
            first = trial
            if len(first) == d + 1:
                break
    if len(first) != d + 1:
        raise GeometryError("points are not full-dimensional")
    simplices = [tuple(sorted(first))]
    placed = set(first)
    for i in range(len(coords)):
        if i in placed:
            continue
        count = {}
        owner = {}
        for s in simplices:
            for f in itertools.combinations(s, d):
                count[f] = count.get(f, 0) + 1
                owner[f] = s
        new = []
        for f, cnt in count.items():
            if cnt != 1:
                continue
            s = owner[f]
            opp = next(v for v in s if v not in f)
            face = [coords[v] for v in f]
            so = _orient(face, coords[opp])
            sq = _orient(face, coords[i])
            if sq != 0 and (sq > 0) != (so > 0):
                new.append(tuple(sorted(f + (i,))))
        simplices.extend(new)
        placed.add(i)
    return simplices


def normalized_volume(P):
    """``d!`` times the Euclidean volume of ``P`` in its own lattice."""
    if P.dim == 0:
        return 1
    coords = list(P.vertex_coords)
    return sum(simplex_volume([coords[i] for i in s]) for s in placing_triangulation(coords))


def random_unimodular_matrix(n, rng=None, steps=None):
    """Random integer matrix with determinant ±1 (product of elementary moves)."""
    rng = rng or random.Random()
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n < 2:
        return [[rng.choice((1, -1))]] if n == 1 else m
    for _ in range(steps or 4 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-x for x in m[0]]
    return m


def apply_affine(matrix, translation, p):
    """``matrix @ p + translation`` for integer data."""
    return tuple(sum(a * x for a, x in zip(row, p)) + t for row, t in zip(matrix, translation))


def random_saturated_embedding(n, m, rng=None):
    """Random injective integer linear map ``Z^n -> Z^m`` with saturated image.

    The columns are the first ``n`` columns of a random unimodular matrix,
    so they extend to a basis of ``Z^m``.
    """
    if m < n:
        raise GeometryError("target dimension too small")
    u = random_unimodular_matrix(m, rng)
    return [row[:n] for row in u]
