# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer elimination kernels.

Same contract as ``_kernels_py``. Each routine first runs on a dense
``long long`` buffer with checked arithmetic; if an entry does not fit or any
intermediate overflows, it reruns the pure-Python routine on the original
input, so results are always exact.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

from . import _kernels_py

cdef extern from *:
    """
    #include <limits.h>
    static inline int ek_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r) || *r == LLONG_MIN;
    }
    static inline int ek_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r) || *r == LLONG_MIN;
    }
    """
    int ek_mul(long long a, long long b, long long *r) nogil
    int ek_sub(long long a, long long b, long long *r) nogil

cdef long long LIMIT = 1LL << 62


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline void _primitive(long long *row, Py_ssize_t n) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(n):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g


cdef inline bint _is_zero(long long *row, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(n):
        if row[j]:
            return False
    return True


cdef inline int _combine(long long *dst, long long *src, long long gg,
                         long long ff, Py_ssize_t n) noexcept nogil:
    # dst <- gg*dst - ff*src ; returns 1 on overflow
    cdef Py_ssize_t j
    cdef long long a, b
    for j in range(n):
        if ek_mul(gg, dst[j], &a):
            return 1
        if ek_mul(ff, src[j], &b):
            return 1
        if ek_sub(a, b, &dst[j]):
            return 1
    return 0


cdef long long *_load(rows, Py_ssize_t ncols, Py_ssize_t *m_out) except? NULL:
    """Copy nonzero rows into a C buffer; returns NULL if an entry is too big."""
    cdef list kept = [r for r in rows if any(r)]
    cdef Py_ssize_t m = len(kept)
    cdef Py_ssize_t i, j
    cdef long long *a = <long long *> malloc((m * ncols + 1) * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    for i in range(m):
        row = kept[i]
        for j in range(ncols):
            x = row[j]
            if x >= LIMIT or x <= -LIMIT:
                free(a)
                m_out[0] = -1
                return NULL
            a[i * ncols + j] = x
    m_out[0] = m
    return a


def rref_int(rows, Py_ssize_t ncols):
    """Fraction-free reduced row echelon form (see ``_kernels_py.rref_int``)."""
    cdef Py_ssize_t m = 0
    cdef long long *a = _load(rows, ncols, &m)
    if a == NULL:
        return _kernels_py.rref_int(rows, ncols)
    cdef long long *tmp = <long long *> malloc((ncols + 1) * sizeof(long long))
    cdef Py_ssize_t r = 0, c, p, q, j, w
    cdef long long g, f, h
    cdef long long *prow
    cdef long long *qrow
    cdef bint overflow = False
    pivots = []
    try:
        for c in range(ncols):
            if r == m:
                break
            p = r
            while p < m and a[p * ncols + c] == 0:
                p += 1
            if p == m:
                continue
            if p != r:
                memcpy(tmp, &a[p * ncols], ncols * sizeof(long long))
                memcpy(&a[p * ncols], &a[r * ncols], ncols * sizeof(long long))
                memcpy(&a[r * ncols], tmp, ncols * sizeof(long long))
            prow = &a[r * ncols]
            _primitive(prow, ncols)
            if prow[c] < 0:
                for j in range(ncols):
                    prow[j] = -prow[j]
            g = prow[c]
            # eliminate column c everywhere, compacting zero rows below r
            w = r + 1
            for q in range(m):
                if q == r:
                    continue
                qrow = &a[q * ncols]
                f = qrow[c]
                if f != 0:
                    h = _gcd(g, f)
                    if _combine(qrow, prow, g // h, f // h, ncols):
                        overflow = True
                        break
                    _primitive(qrow, ncols)
                if q > r:
                    if _is_zero(qrow, ncols):
                        continue
                    if w != q:
                        memcpy(&a[w * ncols], qrow, ncols * sizeof(long long))
                    w += 1
            if overflow:
                break
            m = w
            pivots.append(c)
            r += 1
        if overflow:
            return _kernels_py.rref_int(rows, ncols)
        out = [[a[q * ncols + j] for j in range(ncols)] for q in range(r)]
        return out, pivots
    finally:
        free(a)
        free(tmp)


def rank_int(rows, Py_ssize_t ncols):
    """Rank of an integer matrix (see ``_kernels_py.rank_int``)."""
    cdef Py_ssize_t m = 0
    cdef long long *a = _load(rows, ncols, &m)
    if a == NULL:
        return _kernels_py.rank_int(rows, ncols)
    cdef long long *tmp = <long long *> malloc((ncols + 1) * sizeof(long long))
    cdef Py_ssize_t r = 0, c, p, q, w
    cdef long long g, f, h
    cdef long long *prow
    cdef long long *qrow
    cdef bint overflow = False
    try:
        with nogil:
            for c in range(ncols):
                if r == m:
                    break
                p = r
                while p < m and a[p * ncols + c] == 0:
                    p += 1
                if p == m:
                    continue
                if p != r:
                    memcpy(tmp, &a[p * ncols], ncols * sizeof(long long))
                    memcpy(&a[p * ncols], &a[r * ncols], ncols * sizeof(long long))
                    memcpy(&a[r * ncols], tmp, ncols * sizeof(long long))
                prow = &a[r * ncols]
                _primitive(prow, ncols)
                g = prow[c]
                w = r + 1
                for q in range(r + 1, m):
                    qrow = &a[q * ncols]
                    f = qrow[c]
                    if f != 0:
                        h = _gcd(g, f)
                        if _combine(qrow, prow, g // h, f // h, ncols):
                            overflow = True
                            break
                        _primitive(qrow, ncols)
                        if _is_zero(qrow, ncols):
                            continue
                    if w != q:
                        memcpy(&a[w * ncols], qrow, ncols * sizeof(long long))
                    w += 1
                if overflow:
                    break
                m = w
                r += 1
        if overflow:
            return _kernels_py.rank_int(rows, ncols)
        return r
    finally:
        free(a)
        free(tmp)


def reduce_int(vec, echelon, pivots):
    """Reduce ``vec`` modulo an ``rref_int`` result (see ``_kernels_py``)."""
    cdef Py_ssize_t n = len(vec)
    cdef Py_ssize_t k = len(pivots)
    cdef Py_ssize_t i, j, c
    cdef long long *v
    cdef long long *row
    cdef long long denom = 1, f, g, h, gg, t
    cdef bint overflow = False
    for x in vec:
        if x >= LIMIT or x <= -LIMIT:
            return _kernels_py.reduce_int(vec, echelon, pivots)
    v = <long long *> malloc((n + 1) * sizeof(long long))
    row = <long long *> malloc((n + 1) * sizeof(long long))
    try:
        for j in range(n):
            v[j] = vec[j]
        for i in range(k):
            c = pivots[i]
            f = v[c]
            if f == 0:
                continue
            erow = echelon[i]
            for j in range(n):
                x = erow[j]
                if x >= LIMIT or x <= -LIMIT:
                    overflow = True
                    break
                row[j] = x
            if overflow:
                break
            g = row[c]
            h = _gcd(g, f)
            gg = g // h
            if _combine(v, row, gg, f // h, n) or ek_mul(denom, gg, &t):
                overflow = True
                break
            denom = t
            g = denom
            for j in range(n):
                if v[j]:
                    g = _gcd(g, v[j])
                    if g == 1:
                        break
            if g > 1:
                for j in range(n):
                    v[j] = v[j] // g
                denom = denom // g
        if overflow:
            return _kernels_py.reduce_int(vec, echelon, pivots)
        return [v[j] for j in range(n)], denom
    finally:
        free(v)
        free(row)
