# cython: language_level=3
"""Compiled twins of the functions in _pykernels."""
from libc.math cimport exp, log1p, INFINITY

cdef double NEG_INF = -INFINITY


cdef inline double _lq(long n, double logq, int* sgn) noexcept:
    if n == 0:
        sgn[0] = 0
        return NEG_INF
    if n < 0:
        sgn[0] = -sgn[0]
        n = -n
    return -(n - 1) * logq + log1p(-exp(2 * n * logq)) - log1p(-exp(2 * logq))


def log_qint(long n, double logq):
    cdef int s = 1
    cdef double v = _lq(n, logq, &s)
    return s, v


cdef int _link(long* ra, int la, long* rb, int lb, int j, int k, double logq, double* out) except -2:
    cdef int sign = 1, s2
    cdef int i
    cdef double acc = (-ra[j - 1] + rb[k - 1] - k + j) * logq
    for i in range(1, la + 1):
        if i == j:
            continue
        acc += _lq(ra[i - 1] - rb[k - 1] - i + k, logq, &sign)
        s2 = 1
        acc -= _lq(ra[i - 1] - ra[j - 1] - i + j, logq, &s2)
        if s2 == 0:
            raise ValueError("division by [0]_q: rows do not interlace")
        sign *= s2
    for i in range(1, lb + 1):
        if i == k:
            continue
        acc += _lq(rb[i - 1] - ra[j - 1] - i + j - 1, logq, &sign)
        s2 = 1
        acc -= _lq(rb[i - 1] - rb[k - 1] - i + k - 1, logq, &s2)
        if s2 == 0:
            raise ValueError("division by [0]_q: rows do not interlace")
        sign *= s2
    out[0] = acc if sign != 0 else NEG_INF
    return sign


cdef int _term(long* ra, int la, long* rb, int lb, int j, double logq, double* out) except -2:
    cdef int sign = 1, s2
    cdef int i
    cdef long e = 1 - j
    for i in range(lb):
        e += rb[i]
    for i in range(la):
        if i != j - 1:
            e -= ra[i]
    cdef double acc = e * logq
    for i in range(1, lb + 1):
        acc += _lq(rb[i - 1] - ra[j - 1] - i + j - 1, logq, &sign)
    for i in range(1, la + 1):
        if i == j:
            continue
        s2 = 1
        acc -= _lq(ra[i - 1] - ra[j - 1] - i + j, logq, &s2)
        if s2 == 0:
            raise ValueError("division by [0]_q: rows do not interlace")
        sign *= s2
    out[0] = acc if sign != 0 else NEG_INF
    return sign


cdef void _fill(object row, long* buf, int* n):
    cdef int t = 0
    for x in row:
        buf[t] = x
        t += 1
    n[0] = t


def link_square(ra, rb, int j, int k, double logq):
    cdef long a[64]
    cdef long b[64]
    cdef int la, lb
    cdef double v
    _fill(ra, a, &la)
    _fill(rb, b, &lb)
    s = _link(a, la, b, lb, j, k, logq, &v)
    return s, v


def terminal_square(ra, rb, int j, double logq):
    cdef long a[64]
    cdef long b[64]
    cdef int la, lb
    cdef double v
    _fill(ra, a, &la)
    _fill(rb, b, &lb)
    s = _term(a, la, b, lb, j, logq, &v)
    return s, v


def cg_log(rows, move, double logq):
    cdef long buf[64][64]
    cdef int lens[64]
    cdef int nr = 0, i = len(move), a, j, k, s
    cdef int sign = 1
    cdef double acc = 0.0, v
    for row in rows:
        _fill(row, buf[nr], &lens[nr])
        nr += 1
    for a in range(1, i):
        j = move[a - 1]
        k = move[a]
        s = _link(buf[a - 1], lens[a - 1], buf[a], lens[a], j, k, logq, &v)
        if s <= 0:
            return 0, NEG_INF
        acc += 0.5 * v
        if k < j:
            sign = -sign
    if i < nr:
        s = _term(buf[i - 1], lens[i - 1], buf[i], lens[i], move[i - 1], logq, &v)
    else:
        s = _term(buf[i - 1], lens[i - 1], buf[0], 0, move[i - 1], logq, &v)
    if s <= 0:
        return 0, NEG_INF
    return sign, acc + 0.5 * v
