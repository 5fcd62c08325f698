"""Exact rational and integer linear algebra.

Everything here works on lists of ``int`` / ``Fraction``; nothing is ever
rounded. Rank and row reduction go through :mod:`ehrchow.kernels` after
clearing denominators row by row.
"""
from fractions import Fraction
from math import lcm

from . import kernels


def _row_to_int(row):
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def integer_rows(rows):
    """Scale each rational row by a positive integer so it becomes integral."""
    return [_row_to_int(r) for r in rows]


def rank(rows, ncols=None):
    """Exact rank of a rational matrix given as a list of rows."""
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return kernels.rank_int(integer_rows(rows), ncols)


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows, ncols=None):
        self.rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.shape = (len(self.rows), ncols)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def rank(self):
        if self.shape[0] == 0 or self.shape[1] == 0:
            return 0
        return rank(self.rows, self.shape[1])

    def __matmul__(self, other):
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if n else []
        out = [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
               for row in self.rows]
        return RationalMatrix(out, n)

    def apply(self, vec):
        return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.rows)

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def transpose(self):
        m, n = self.shape
        return RationalMatrix([[self.rows[i][j] for i in range(m)] for j in range(n)], m)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                              self.shape[1])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return RationalMatrix([[c * a for a in r] for r in self.rows], self.shape[1])

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"RationalMatrix({[[str(x) for x in r] for r in self.rows]})"


def vstack(blocks, ncols):
    rows = []
    for b in blocks:
        rows.extend(b.rows)
    return RationalMatrix(rows, ncols)


def hstack(blocks, nrows):
    rows = [[] for _ in range(nrows)]
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[i].extend(r)
    return RationalMatrix(rows, sum(b.shape[1] for b in blocks))


def rref(rows, ncols):
    """Rational RREF: returns ``(rows, pivots)`` with unit pivots."""
    ech, piv = kernels.rref_int(integer_rows(rows), ncols)
    return [[Fraction(x, r[c]) for x in r] for r, c in zip(ech, piv)], piv


def nullspace(rows, ncols):
    """Basis (list of rational vectors) of ``{x : A x = 0}``."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in zip(red, piv):
            v[c] = -r[f]
        basis.append(v)
    return basis


def solve(a, b):
    """Unique solution of the square system ``a x = b``; raises if singular."""
    n = len(a)
    aug = [list(row) + [bb] for row, bb in zip(a, b)]
    red, piv = rref(aug, n + 1)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def det(a):
    """Exact determinant via Bareiss elimination (integer or rational input)."""
    n = len(a)
    if n == 0:
        return 1
    den = 1
    m = []
    for row in a:
        rd = 1
        for x in row:
            if isinstance(x, Fraction):
                rd = lcm(rd, x.denominator)
        den *= rd
        m.append([int(x * rd) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k]:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    d = sign * m[n - 1][n - 1]
    return Fraction(d) / den if den != 1 else d


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_kernel(rows, ncols):
    """Basis of the integer kernel ``{x in Z^n : A x = 0}`` of an integer matrix.

    Column operations reduce ``A`` to echelon form while the same operations
    act on an identity block; the identity columns sitting under the zero
    columns of the reduced matrix span the kernel lattice, which is therefore
    saturated.
    """
    m = len(rows)
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(j, k, p, q, r, s):
        # (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k), det = ±1
        for mat in (a, u):
            for row in mat:
                x, y = row[j], row[k]
                row[j], row[k] = p * x + q * y, r * x + s * y

    c = 0
    for i in range(m):
        if c == ncols:
            break
        for k in range(c + 1, ncols):
            x, y = a[i][c], a[i][k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(c, k, s, t, -y // g, x // g)
        if a[i][c] != 0:
            c += 1
    return [[u[r][j] for r in range(ncols)] for j in range(c, ncols)]


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix, zero rows dropped."""
    if not rows:
        return []
    n = len(rows[0])
    a = [list(r) for r in rows]
    out_r = 0
    for c in range(n):
        if out_r == len(a):
            break
        nz = [i for i in range(out_r, len(a)) if a[i][c] != 0]
        if not nz:
            continue
        while True:
            nz = [i for i in range(out_r, len(a)) if a[i][c] != 0]
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[out_r], a[p] = a[p], a[out_r]
            done = True
            for i in range(out_r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[out_r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[out_r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[out_r][c] < 0:
            a[out_r] = [-x for x in a[out_r]]
        for i in range(out_r):
            q = a[i][c] // a[out_r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[out_r])]
        out_r += 1
    return [r for r in a[:out_r] if any(r)]


def saturate_lattice(vectors):
    """Basis of ``span_R(vectors) ∩ Z^N`` in Hermite normal form.

    The saturation is the integer kernel of the integer kernel: vectors
    orthogonal to everything orthogonal to the input.
    """
    vectors = [list(v) for v in vectors]
    if not vectors or not any(any(v) for v in vectors):
        return []
    n = len(vectors[0])
    perp = integer_kernel(vectors, n)
    if not perp:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return hermite_normal_form(integer_kernel(perp, n))


def lattice_index(vectors):
    """Index of the lattice spanned by ``vectors`` inside its saturation.

    The vectors must be linearly independent. The index is 1 exactly when
    they extend to a basis of ``span ∩ Z^N``.
    """
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 1
    n = len(vectors[0])
    if rank(vectors, n) != len(vectors):
        raise ValueError("vectors are linearly dependent")
    basis = saturate_lattice(vectors)
    coords = express_in_basis(vectors, basis)
    return abs(det(coords))


def express_in_basis(vectors, basis):
    """Coordinates of each vector in a linearly independent ``basis``.

    Raises ``ValueError`` if some vector is outside the span.
    """
    if not basis:
        if any(any(v) for v in vectors):
            raise ValueError("vector outside span")
        return [[] for _ in vectors]
    k = len(basis)
    n = len(basis[0])
    # k coordinates on which the basis is invertible
    sel = _independent_columns(basis, n)
    sub = [[basis[i][j] for i in range(k)] for j in sel]
    out = []
    for v in vectors:
        c = solve(sub, [v[j] for j in sel])
        for j in range(n):
            if sum(ci * b[j] for ci, b in zip(c, basis)) != v[j]:
                raise ValueError("vector outside span")
        out.append(c)
    return out


def _independent_columns(rows, ncols):
    _, piv = kernels.rref_int(integer_rows(rows), ncols)
    return piv
