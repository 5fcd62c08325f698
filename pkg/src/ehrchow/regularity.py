"""Regularity of triangulations via exact LP over folding constraints.

A height function ``w`` on the vertices defines a piecewise-affine function
on ``P``. It is strictly convex with distinct pieces iff at every interior
ridge the affine piece of one adjacent cell, extended to the opposite vertex
of the other cell, lies strictly below the height there. This is the
standard local criterion for triangulations of a convex region: along any
segment the function's slope can only increase across ridges, so local
strict folding propagates to global convexity and the pieces of distinct
cells are pairwise different.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, lp


class RegularityError(ValueError):
    pass


@dataclass(frozen=True)
class FoldConstraint:
    ridge: tuple
    left: tuple
    right: tuple
    opposite: int
    row: tuple  # ((vertex, coefficient), ...)

    def value(self, heights):
        return sum((c * Fraction(heights[v]) for v, c in self.row), Fraction(0))


def _barycentric(T, simplex, p):
    """Affine coordinates of point index ``p`` with respect to ``simplex``."""
    cs = [T.coords[v] for v in simplex]
    d = len(cs) - 1
    a = [[cs[j][i] for j in range(d + 1)] for i in range(d)] + [[1] * (d + 1)]
    return linalg.solve(a, list(T.coords[p]) + [1])


def fold_constraints(T):
    """One folding functional per interior ridge of ``T``.

    The row encodes ``w(opposite) - (affine extension of w over left)(opposite)``;
    strict convexity at the ridge means the value is positive.
    """
    d = T.dim
    cofaces = {}
    for s in T.maximal:
        for r in itertools.combinations(s, d):
            cofaces.setdefault(r, []).append(s)
    out = []
    for ridge in sorted(cofaces):
        cells = cofaces[ridge]
        if len(cells) == 1:
            continue
        if len(cells) > 2:
            raise RegularityError(f"ridge {list(ridge)} lies in {len(cells)} maximal simplices")
        left, right = sorted(cells)
        opp = next(v for v in right if v not in ridge)
        beta = _barycentric(T, left, opp)
        coeffs = {opp: Fraction(1)}
        for v, b in zip(left, beta):
            coeffs[v] = coeffs.get(v, Fraction(0)) - b
        row = tuple(sorted((v, c) for v, c in coeffs.items() if c != 0))
        out.append(FoldConstraint(ridge, left, right, opp, row))
    return out


def find_regularity_witness(T):
    """Heights making every fold strict (margin at least 1), or ``None``.

    Folds are unchanged by adding a global affine function, so a witness may
    be normalized to vanish on the first maximal simplex. Convexity then
    forces all heights to be nonnegative, which lets the LP use ``x >= 0``
    directly.
    """
    folds = fold_constraints(T)
    verts = T.vertices
    if not folds:
        return {v: Fraction(0) for v in verts}
    pinned = set(T.maximal[0])
    free = [v for v in verts if v not in pinned]
    col = {v: j for j, v in enumerate(free)}
    A_ub, b_ub = [], []
    for f in folds:
        row = [Fraction(0)] * len(free)
        for v, c in f.row:
            if v in col:
                row[col[v]] -= c
        A_ub.append(row)
        b_ub.append(-1)
    x = lp.feasible_point(A_ub, b_ub, n=len(free))
    if x is None:
        return None
    w = {v: Fraction(0) for v in verts}
    for v, j in col.items():
        w[v] = x[j]
    return w


def affine_pieces(T, w):
    """For each maximal simplex, the affine function ``(a, c)`` in hull coordinates agreeing with ``w``."""
    d = T.dim
    out = {}
    for s in T.maximal:
        a = [list(T.coords[v]) + [1] for v in s]
        sol = linalg.solve(a, [Fraction(w[v]) for v in s])
        out[s] = (tuple(sol[:d]), sol[d])
    return out


def verify_witness(T, w):
    """Every fold strictly convex and adjacent cells carry distinct affine pieces."""
    if any(v not in w for v in T.vertices):
        return False
    folds = fold_constraints(T)
    if any(f.value(w) <= 0 for f in folds):
        return False
    pieces = affine_pieces(T, w)
    return all(pieces[f.left] != pieces[f.right] for f in folds)


def is_regular(T):
    return find_regularity_witness(T) is not None


def add_affine(T, w, linear, constant):
    """``w + (x -> linear . x + constant)`` with ``x`` in ambient coordinates."""
    return {v: Fraction(w[v]) + sum(Fraction(a) * x for a, x in zip(linear, T.points[v])) + Fraction(constant)
            for v in w}


def lifted_value(T, w, p):
    """Value at a rational point ``p`` (ambient coordinates) of the function defined by ``w``.

    Uses the first maximal simplex containing ``p``; the function is
    continuous so the choice does not matter.
    """
    c = T.polytope.hull.coords(p)
    if c is None:
        raise RegularityError("point outside the affine hull")
    for s in T.maximal:
        cs = [T.coords[v] for v in s]
        d = len(cs) - 1
        a = [[cs[j][i] for j in range(d + 1)] for i in range(d)] + [[1] * (d + 1)]
        beta = linalg.solve(a, list(c) + [1])
        if all(b >= 0 for b in beta):
            return sum((b * Fraction(w[v]) for b, v in zip(beta, s)), Fraction(0))
    raise RegularityError("point not covered by the triangulation")


def restrict_weights(w, T_big, T_small):
    """Heights of ``T_small`` inherited from ``T_big`` by matching coordinates."""
    return {i: w[T_big.index[T_small.points[i]]] for i in T_small.vertices}
