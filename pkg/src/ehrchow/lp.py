"""Exact two-phase simplex method over the rationals.

Dense tableau, Bland's rule (guaranteed termination), ``Fraction`` entries.
Intended for the small feasibility problems that come up when deciding
regularity and proper intersection of simplices.
"""
from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple = ()
    fun: Fraction = None

    @property
    def success(self):
        return self.status == OPTIMAL


def _pivot(tab, basis, row, col):
    prow = tab[row]
    p = prow[col]
    if p != 1:
        prow = [v / p for v in prow]
        tab[row] = prow
    nz = [(j, b) for j, b in enumerate(prow) if b]
    for i, r in enumerate(tab):
        if i == row:
            continue
        f = r[col]
        if f:
            r = list(r)
            for j, b in nz:
                r[j] -= f * b
            tab[i] = r
    basis[row] = col


def _simplex(tab, basis, ncols, allowed):
    """Minimize the objective stored in the last tableau row.

    The last row holds reduced costs, its last entry minus the objective
    value. Returns False when unbounded.
    """
    m = len(tab) - 1
    while True:
        obj = tab[m]
        col = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], col)


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()):
    """Minimize ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``, ``x >= 0``.

    All inputs are converted to ``Fraction``. Mirrors the argument order of
    ``scipy.optimize.linprog`` but solves exactly.
    """
    n = len(c)
    c = [Fraction(v) for v in c]
    rows = []
    rhs = []
    n_slack = len(A_ub)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(v) for v in a] + [Fraction(int(j == k)) for j in range(n_slack)]
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    m = len(rows)
    nv = n + n_slack
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: one artificial per row
    total = nv + m
    tab = []
    for i in range(m):
        tab.append(rows[i] + [Fraction(int(j == i)) for j in range(m)] + [rhs[i]])
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(nv):
            obj[j] -= tab[i][j]
        obj[-1] -= rhs[i]
    tab.append(obj)
    basis = list(range(nv, total))
    _simplex(tab, basis, total, [True] * total)
    if tab[m][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab) - 1:
        if basis[i] >= nv:
            col = next((j for j in range(nv) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, col)
        i += 1
    m = len(tab) - 1

    # phase 2
    tab = [r[:nv] + [r[-1]] for r in tab[:m]]
    obj = c + [Fraction(0)] * n_slack + [Fraction(0)]
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [a - f * v for a, v in zip(obj, tab[i])]
    tab.append(obj)
    if not _simplex(tab, basis, nv, [True] * nv):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    fun = sum((ci * xi for ci, xi in zip(c, x[:n])), Fraction(0))
    return LPResult(OPTIMAL, tuple(x[:n]), fun)


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n=None):
    """A point of ``{x >= 0 : A_ub x <= b_ub, A_eq x == b_eq}`` or ``None``."""
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.success else None
