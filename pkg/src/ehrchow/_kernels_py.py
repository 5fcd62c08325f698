"""Pure-Python integer elimination kernels.

Reference implementation of the routines in ``_kernels.pyx``. All rows are
lists of Python ints; results are exact. Rows are kept primitive (content 1)
after every update so entries stay small.
"""
from math import gcd


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref_int(rows, ncols):
    """Fraction-free reduced row echelon form.

    Returns ``(echelon, pivots)``: ``echelon[r]`` is a primitive integer row
    whose pivot ``pivots[r]`` is positive and is the only nonzero entry of
    that column among the echelon rows. The rational RREF row is
    ``echelon[r] / echelon[r][pivots[r]]``. Pivots are chosen left to right,
    first nonzero row wins, so the output is deterministic.
    """
    a = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        m = len(a)
        if r == m:
            break
        p = r
        while p < m and a[p][c] == 0:
            p += 1
        if p == m:
            continue
        prow = _primitive(a[p])
        if prow[c] < 0:
            prow = [-x for x in prow]
        a[p] = a[r]
        a[r] = prow
        g = prow[c]
        out = []
        for q, row in enumerate(a):
            f = row[c]
            if q == r or f == 0:
                out.append(row)
                continue
            h = gcd(g, f)
            gg, ff = g // h, f // h
            row = [gg * x - ff * y for x, y in zip(row, prow)]
            if q < r or any(row):
                out.append(_primitive(row))
        a = out
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_int(rows, ncols):
    """Rank of an integer matrix (forward elimination only)."""
    a = [list(r) for r in rows if any(r)]
    m = len(a)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and a[p][c] == 0:
            p += 1
        if p == m:
            continue
        a[r], a[p] = a[p], a[r]
        prow = a[r]
        g = prow[c]
        keep = a[:r + 1]
        for q in range(r + 1, m):
            f = a[q][c]
            if f == 0:
                keep.append(a[q])
                continue
            h = gcd(g, f)
            gg, ff = g // h, f // h
            row = [gg * x - ff * y for x, y in zip(a[q], prow)]
            if any(row):
                keep.append(_primitive(row))
        a = keep
        m = len(a)
        r += 1
    return r


def reduce_int(vec, echelon, pivots):
    """Reduce ``vec`` modulo the row space of an ``rref_int`` result.

    Returns ``(out, denom)`` with ``vec == out / denom`` modulo the row space,
    ``out`` zero on every pivot column and ``denom > 0``.
    """
    v = list(vec)
    denom = 1
    for row, c in zip(echelon, pivots):
        f = v[c]
        if f == 0:
            continue
        g = row[c]
        h = gcd(g, f)
        gg, ff = g // h, f // h
        v = [gg * x - ff * y for x, y in zip(v, row)]
        denom *= gg
    g = denom
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        v = [x // g for x in v]
        denom //= g
    return v, denom
