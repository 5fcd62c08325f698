"""Chow rings of lattice triangulations by Artinian reduction.

``A*(T) = C[T] / J`` where ``C[T]`` is the Stanley-Reisner ring (polynomials
in one variable per vertex, modulo monomials whose support is not a face)
and ``J`` is generated by the linear forms ``f_0 = sum x_p`` and
``f_j = sum p_j x_p``.

Each graded piece is handled as a vector space over Q: degree ``i`` of
``C[T]`` has the face-supported monomials of degree ``i`` as a basis, and
the degree-``i`` slice of ``J`` is spanned by ``f_j * m`` for monomials ``m``
of degree ``i - 1`` (``J`` is generated in degree one). The slice is put in
reduced echelon form with pivots chosen left to right in lexicographic
monomial order; the non-pivot monomials are the coordinate basis of
``A^i``. The systems are defined over Q, so dimensions over Q agree with
dimensions over C.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

from . import geometry, kernels, linalg
from .linalg import RationalMatrix
from .regularity import find_regularity_witness, restrict_weights, verify_witness
from .triangulation import (
    TriangulationError,
    closed_star,
    covers_hull,
    is_unimodular,
    map_triangulation,
    star_intersection,
    validate_triangulation,
)


class ChowError(ValueError):
    pass


class PreconditionError(ChowError):
    pass


def _face_of(m):
    return tuple(sorted(set(m)))


def sr_dimension(T, i):
    """``dim C[T]_i``: monomials of degree ``i`` supported exactly on each face."""
    if i == 0:
        return 1
    return sum(comb(i - 1, len(f) - 1) for f in T.faces if 0 < len(f) <= i)


def standard_generators(T):
    """``[f_0, f_1, ..., f_N]`` as ``{vertex: coefficient}`` maps."""
    verts = T.vertices
    gens = [{v: 1 for v in verts}]
    for j in range(T.ambient_dim):
        gens.append({v: T.points[v][j] for v in verts})
    return gens


def class_of_weight(T, w):
    """Degree-one element ``sum_p w(p) x_p``."""
    return {v: Fraction(w[v]) for v in T.vertices}


@dataclass(frozen=True)
class QuotientMap:
    matrix: RationalMatrix
    source_degree: int
    target_degree: int

    def rank(self):
        return self.matrix.rank()

    def __matmul__(self, other):
        return QuotientMap(self.matrix @ other.matrix, other.source_degree, self.target_degree)


class GradedQuotient:
    """Graded pieces of ``C[T]`` and ``A*(T)``, built lazily degree by degree."""

    def __init__(self, T):
        self.T = T
        self.faces = T.faces
        self.vertices = T.vertices
        self.generators = standard_generators(T)
        # J only depends on the span of the generators; reduce with the Hermite
        # basis of their integer row lattice, which keeps entries small and is
        # unchanged by saturated embeddings
        rows = [[g[v] for v in self.vertices] for g in self.generators]
        self._gens = [dict(zip(self.vertices, r)) for r in linalg.hermite_normal_form(rows)]
        self._basis = [[()]]
        self._index = [{(): 0}]
        self._jslice = [([], [])]
        self._coords = [[()]]
        self._coord_cols = [[0]]

    @property
    def top_degree(self):
        return len(self._basis) - 1

    def multiply(self, m, n):
        """Product of two monomials in ``C[T]``; ``None`` when it lies in ``I``."""
        prod = tuple(sorted(m + n))
        return prod if _face_of(prod) in self.faces else None

    def _extend(self):
        i = len(self._basis)
        prev = self._basis[i - 1]
        basis = []
        for m in prev:
            last = m[-1] if m else -1
            for v in self.vertices:
                if v < last:
                    continue
                mm = m + (v,)
                if _face_of(mm) in self.faces:
                    basis.append(mm)
        basis.sort()
        index = {m: k for k, m in enumerate(basis)}
        n = len(basis)
        ech, piv = kernels.rref_int(self._spanning_rows(prev, index), n)
        pivset = set(piv)
        cols = [k for k in range(n) if k not in pivset]
        self._basis.append(basis)
        self._index.append(index)
        self._jslice.append((ech, piv))
        self._coords.append([basis[k] for k in cols])
        self._coord_cols.append(cols)

    def _spanning_rows(self, prev, index):
        rows = []
        for g in self._gens:
            for m in prev:
                row = [0] * len(index)
                for v, c in g.items():
                    if c:
                        mm = self.multiply(m, (v,))
                        if mm is not None:
                            row[index[mm]] += c
                rows.append(row)
        return rows

    def jslice_matrix(self, i):
        """Unreduced integer rows ``g * m`` spanning the degree-``i`` slice of ``J``."""
        self.ensure(i)
        return self._spanning_rows(self._basis[i - 1], self._index[i])

    def ensure(self, i):
        while len(self._basis) <= i:
            self._extend()
        return self

    def basis(self, i):
        """Monomial basis of ``C[T]_i``."""
        return self.ensure(i)._basis[i]

    def coordinates(self, i):
        """Monomials whose classes form the basis of ``A^i``."""
        return self.ensure(i)._coords[i]

    def dim(self, i):
        return len(self.coordinates(i))

    def jslice_rank(self, i):
        return len(self.ensure(i)._jslice[i][1])

    def jslice_rows(self, i):
        """Echelon rows (integer, over ``basis(i)``) spanning the degree-``i`` slice of ``J``."""
        return self.ensure(i)._jslice[i][0]

    def dense(self, i, poly):
        """Dense coefficient list over ``basis(i)`` for ``{monomial: coeff}``."""
        index = self.ensure(i)._index[i]
        v = [Fraction(0)] * len(index)
        for m, c in poly.items():
            v[index[m]] += c
        return v

    def reduce(self, i, poly):
        """Coordinates in ``A^i`` of a degree-``i`` polynomial ``{monomial: coeff}``."""
        self.ensure(i)
        vec = self.dense(i, poly) if isinstance(poly, dict) else list(poly)
        scale = 1
        for x in vec:
            if isinstance(x, Fraction) and x.denominator != 1:
                scale = lcm(scale, x.denominator)
        ivec = [int(x * scale) for x in vec]
        ech, piv = self._jslice[i]
        out, den = kernels.reduce_int(ivec, ech, piv)
        den *= scale
        return tuple(Fraction(out[k], den) for k in self._coord_cols[i])

    def in_j(self, i, poly):
        return not any(self.reduce(i, poly))

    def lift(self, i, coords):
        return {m: Fraction(c) for m, c in zip(self.coordinates(i), coords) if c}

    def times_form(self, poly, form):
        """Product of a polynomial with a linear form, modulo ``I``."""
        out = {}
        for m, c in poly.items():
            for v, a in form.items():
                if not a:
                    continue
                mm = self.multiply(m, (v,))
                if mm is not None:
                    out[mm] = out.get(mm, 0) + c * a
        return out

    def times(self, p, q):
        out = {}
        for m, a in p.items():
            for n, b in q.items():
                mm = self.multiply(m, n)
                if mm is not None:
                    out[mm] = out.get(mm, 0) + a * b
        return out

    def multiply_elements(self, i, x, j, y):
        """Product in ``A*`` of coordinate vectors ``x`` in degree ``i`` and ``y`` in degree ``j``."""
        return self.reduce(i + j, self.times(self.lift(i, x), self.lift(j, y)))

    def jslice_polys(self, i):
        basis = self.basis(i)
        return [{basis[k]: c for k, c in enumerate(row) if c} for row in self.jslice_rows(i)]


@lru_cache(maxsize=256)
def quotient_of(T):
    """Shared :class:`GradedQuotient` for a triangulation."""
    return GradedQuotient(T)


def build_graded_quotient(T, max_degree):
    if max_degree < T.dim:
        raise ValueError("max_degree must be at least d")
    return quotient_of(T).ensure(max_degree)


def chow_dims(T, max_degree=None):
    """``dim A^i`` for ``i = 0 .. max_degree`` (default ``d + 1``)."""
    if max_degree is None:
        max_degree = T.dim + 1
    Q = quotient_of(T)
    return tuple(Q.dim(i) for i in range(max_degree + 1))


def multiplication_map(T, form, i, check=True):
    """Matrix of ``A^i -> A^(i+1)``, ``x -> form * x``.

    With ``check`` the map is verified to be well defined: the form times
    every row of the degree-``i`` slice of ``J`` must reduce to zero.
    """
    Q = quotient_of(T)
    Q.ensure(i + 1)
    if check:
        for row in Q.jslice_polys(i):
            if any(Q.reduce(i + 1, Q.times_form(row, form))):
                raise ChowError("multiplication does not preserve J; elimination is inconsistent")
    cols = [Q.reduce(i + 1, Q.times_form({m: 1}, form)) for m in Q.coordinates(i)]
    rows = [[c[r] for c in cols] for r in range(Q.dim(i + 1))]
    return QuotientMap(RationalMatrix(rows, Q.dim(i)), i, i + 1)


def power_map(T, form, start, exponent):
    """Multiplication by ``form ** exponent`` from ``A^start``."""
    Q = quotient_of(T)
    n = Q.dim(start)
    out = QuotientMap(RationalMatrix.identity(n), start, start)
    for e in range(exponent):
        out = multiplication_map(T, form, start + e) @ out
    return out


@dataclass(frozen=True)
class LefschetzEntry:
    k: int
    source_degree: int
    target_degree: int
    power: int
    rank: int
    source_dim: int
    target_dim: int

    @property
    def injective(self):
        return self.rank == self.source_dim


def _lefschetz_degrees(d, k):
    src = (d + 1) // 2 - k
    power = 2 * k if d % 2 == 0 else 2 * k - 1
    return src, power


def lefschetz_entry(T, w, k):
    d = T.dim
    src, power = _lefschetz_degrees(d, k)
    m = power_map(T, class_of_weight(T, w), src, power)
    Q = quotient_of(T)
    return LefschetzEntry(k, src, src + power, power, m.rank(), Q.dim(src), Q.dim(src + power))


def lefschetz_check(T, w, k, check_preconditions=True):
    """Whether multiplication by ``[w]^power`` is injective ``A^(ceil(d/2)-k) -> A^(floor(d/2)+k)``.

    ``power`` is ``2k`` for even ``d`` and ``2k - 1`` for odd ``d``.
    """
    d = T.dim
    if not 1 <= k <= (d + 1) // 2:
        raise PreconditionError(f"k must lie in 1..{(d + 1) // 2}")
    if check_preconditions:
        if not is_unimodular(T):
            raise PreconditionError("triangulation is not unimodular")
        if not verify_witness(T, w):
            raise PreconditionError("weights do not witness regularity")
    return lefschetz_entry(T, w, k).injective


def lefschetz_table(T, w):
    return {k: lefschetz_entry(T, w, k) for k in range(1, (T.dim + 1) // 2 + 1)}


class Pullback:
    """Pullback ``A*(big) -> A*(small)`` along an injective integer affine map.

    ``x_q`` maps to ``x_p`` when ``q = psi(p)`` and to zero when ``q`` is not
    in the image. Without an explicit map the two triangulations share an
    ambient space and points are matched by coordinates.
    """

    def __init__(self, small, big, matrix=None, translation=None):
        self.small, self.big = small, big
        if matrix is None:
            if small.ambient_dim != big.ambient_dim:
                raise PreconditionError("ambient dimensions differ; pass the map explicitly")
            images = list(small.points)
        else:
            if linalg.rank(matrix, small.ambient_dim) != small.ambient_dim:
                raise PreconditionError("map is not injective")
            if translation is None:
                translation = [0] * len(matrix)
            images = [geometry.apply_affine(matrix, translation, p) for p in small.points]
        self.gen_map = {}
        for i in small.vertices:
            j = big.index.get(images[i])
            if j is not None:
                self.gen_map[j] = i
        for s in small.maximal:
            img = []
            for v in s:
                j = big.index.get(images[v])
                if j is None:
                    raise PreconditionError(f"vertex {small.points[v]} does not map to a point of the target")
                img.append(j)
            if tuple(sorted(img)) not in big.faces:
                raise PreconditionError(f"simplex {list(s)} does not map onto a simplex of the target")
        self.Qs = quotient_of(small)
        self.Qb = quotient_of(big)

    def monomial(self, m):
        out = []
        for v in m:
            w = self.gen_map.get(v)
            if w is None:
                return None
            out.append(w)
        out = tuple(sorted(out))
        return out if _face_of(out) in self.small.faces else None

    def poly(self, p):
        out = {}
        for m, c in p.items():
            mm = self.monomial(m)
            if mm is not None:
                out[mm] = out.get(mm, 0) + c
        return out

    def degree_map(self, i, check=True):
        """Matrix of ``A^i(big) -> A^i(small)``; ``check`` verifies ``J`` goes into ``J``."""
        Qs, Qb = self.Qs, self.Qb
        Qs.ensure(i)
        if check:
            for row in Qb.jslice_polys(i):
                if any(Qs.reduce(i, self.poly(row))):
                    raise ChowError("pullback does not send J into J")
        cols = [Qs.reduce(i, self.poly({m: 1})) for m in Qb.coordinates(i)]
        rows = [[c[r] for c in cols] for r in range(Qs.dim(i))]
        return QuotientMap(RationalMatrix(rows, Qb.dim(i)), i, i)

    def generators_land_in_j(self):
        return all(self.Qs.in_j(1, self.poly({(v,): c for v, c in g.items() if c}))
                   for g in self.Qb.generators)


def pullback(small, big, matrix=None, translation=None):
    return Pullback(small, big, matrix, translation)


def _regular_unimodular(T, witness):
    if not is_unimodular(T):
        raise PreconditionError("triangulation is not unimodular")
    if witness is None:
        witness = find_regularity_witness(T)
        if witness is None:
            raise PreconditionError("triangulation is not regular")
    elif not verify_witness(T, witness):
        raise PreconditionError("weights do not witness regularity")
    return witness


def _require_ibip(T):
    from .ibip import is_ibip

    rep = is_ibip(T)
    if not rep.is_ibip:
        raise PreconditionError(f"triangulation is not ibip ({', '.join(rep.failures())})")


def covering_stars(T, witness=None, check_preconditions=True):
    """Closed stars of the interior vertices, each validated and shown regular."""
    if check_preconditions:
        witness = _regular_unimodular(T, witness)
        _require_ibip(T)
    stars = []
    for p in T.interior_vertices:
        S = closed_star(T, p)
        if not validate_triangulation(S).valid:
            raise ChowError(f"closed star of {T.points[p]} is not a triangulated polytope")
        if witness is not None and not verify_witness(S, restrict_weights(witness, T, S)):
            raise ChowError(f"restricted weights fail on the closed star of {T.points[p]}")
        stars.append(S)
    return stars


def covering_map(T, i, witness=None, check_preconditions=True):
    """Stacked restriction ``A^i(T) -> prod_p A^i(clstar p)``."""
    stars = covering_stars(T, witness, check_preconditions)
    Q = quotient_of(T)
    blocks = [pullback(S, T).degree_map(i).matrix for S in stars]
    return linalg.vstack(blocks, Q.dim(i))


def injectivity_into_covering_check(T, i, witness=None, check_preconditions=True):
    """Whether ``A^i(T)`` injects into the product over closed stars of interior points."""
    m = covering_map(T, i, witness, check_preconditions)
    return m.rank() == quotient_of(T).dim(i)


@dataclass(frozen=True)
class CechComplex:
    degree: int
    subsets: tuple  # subsets[k] = tuples of interior vertices indexing C^k (k >= 0)
    dims: tuple  # dims[0] = dim C^-1, dims[k+1] = dim C^k
    differentials: tuple  # differentials[0] = d_-1 : C^-1 -> C^0, ...
    ranks: tuple

    def exact_at(self):
        """Exactness flag at each position ``C^-1, C^0, ...``."""
        out = []
        for pos, n in enumerate(self.dims):
            incoming = self.ranks[pos - 1] if pos > 0 else 0
            outgoing = self.ranks[pos] if pos < len(self.ranks) else 0
            out.append(n - outgoing == incoming)
        return tuple(out)

    @property
    def exact(self):
        return all(self.exact_at())

    def squares_to_zero(self):
        return all((b @ a).is_zero()
                   for a, b in zip(self.differentials, self.differentials[1:]))


def cech_complex(T, i, witness=None, check_preconditions=True):
    """Degree-``i`` slice of the complex ``0 -> A(T) -> ⊕ A(clstar p) -> ⊕ A(clstar p ∩ clstar q) -> ...``.

    The coboundary on a tuple ``p_0 < ... < p_(k+1)`` is the alternating sum
    of restrictions from the tuples with one point removed.
    """
    if check_preconditions:
        witness = _regular_unimodular(T, witness)
        _require_ibip(T)
    interior = T.interior_vertices
    regions = {}
    for r in range(1, len(interior) + 1):
        for S in itertools.combinations(interior, r):
            try:
                R = star_intersection(T, S)
            except TriangulationError as e:
                raise ChowError(str(e)) from None
            if R.dim != T.dim or not covers_hull(R):
                raise ChowError(f"intersection of closed stars of {[T.points[p] for p in S]} "
                                "is not triangulated by its simplices")
            regions[S] = R
    subsets = tuple(tuple(itertools.combinations(interior, r)) for r in range(1, len(interior) + 1))
    Q = quotient_of(T)
    dims = [Q.dim(i)] + [sum(quotient_of(regions[S]).dim(i) for S in level) for level in subsets]

    diffs = []
    # d_-1
    blocks = [pullback(regions[(p,)], T).degree_map(i).matrix for (p,) in subsets[0]] if subsets else []
    if subsets:
        diffs.append(linalg.vstack(blocks, dims[0]))
    for k in range(len(subsets) - 1):
        src, dst = subsets[k], subsets[k + 1]
        src_dims = [quotient_of(regions[S]).dim(i) for S in src]
        offsets = list(itertools.accumulate([0] + src_dims))
        rows = []
        for S in dst:
            n = quotient_of(regions[S]).dim(i)
            block = [[Fraction(0)] * offsets[-1] for _ in range(n)]
            for j in range(len(S)):
                face = S[:j] + S[j + 1:]
                pos = src.index(face)
                mat = pullback(regions[S], regions[face]).degree_map(i).matrix
                sign = -1 if j % 2 else 1
                for r in range(n):
                    for c in range(src_dims[pos]):
                        block[r][offsets[pos] + c] += sign * mat.rows[r][c]
            rows.extend(block)
        diffs.append(RationalMatrix(rows, offsets[-1]))
    ranks = tuple(m.rank() for m in diffs)
    return CechComplex(i, subsets, tuple(dims), tuple(diffs), ranks)


def cech_exactness_check(T, i, witness=None, check_preconditions=True):
    return cech_complex(T, i, witness, check_preconditions).exact


def generators_act_as_zero(T, i):
    """Each standard generator induces the zero map ``A^i -> A^(i+1)``."""
    return all(multiplication_map(T, {v: Fraction(c) for v, c in g.items()}, i).matrix.is_zero()
               for g in standard_generators(T))


def _check_saturated_embedding(matrix, n):
    cols = [list(c) for c in zip(*matrix)]
    if len(cols) != n or linalg.rank(cols, len(matrix)) != n:
        raise PreconditionError("embedding is not injective")
    if linalg.lattice_index(cols) != 1:
        raise PreconditionError("embedding image lattice is not saturated")


def embed(T, matrix, translation):
    """Image of ``T`` under a saturated injective integer affine embedding."""
    _check_saturated_embedding(matrix, T.ambient_dim)
    return map_triangulation(T, matrix, translation)


def embedding_invariance_check(T, matrix, translation):
    """Chow dimensions are unchanged by a saturated unimodular embedding."""
    return chow_dims(embed(T, matrix, translation)) == chow_dims(T)
