# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Smith normal form diagonal on int64 matrices.

Same pivoting as ``_smith_py.smith_diagonal``.  Raises ``OverflowError`` when
an entry leaves [-2**31, 2**31]; callers then rerun with Python integers.
"""

import numpy as np

cdef long long LIMIT = 2147483648


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef Py_ssize_t _min_in_column(long long[:, ::1] a, Py_ssize_t t, Py_ssize_t j, Py_ssize_t nr) nogil:
    cdef Py_ssize_t i, bi = -1
    cdef long long best = 0, av
    for i in range(t, nr):
        if a[i, j] != 0:
            av = _abs(a[i, j])
            if bi < 0 or av < best:
                best = av
                bi = i
                if av == 1:
                    break
    return bi


cdef Py_ssize_t _min_in_row(long long[:, ::1] a, Py_ssize_t t, Py_ssize_t nc) nogil:
    cdef Py_ssize_t j, bj = -1
    cdef long long best = 0, av
    for j in range(t, nc):
        if a[t, j] != 0:
            av = _abs(a[t, j])
            if bj < 0 or av < best:
                best = av
                bj = j
                if av == 1:
                    break
    return bj


cdef void _swap_rows(long long[:, ::1] a, Py_ssize_t i1, Py_ssize_t i2, Py_ssize_t nc) nogil:
    cdef Py_ssize_t j
    cdef long long tmp
    if i1 == i2:
        return
    for j in range(nc):
        tmp = a[i1, j]
        a[i1, j] = a[i2, j]
        a[i2, j] = tmp


cdef void _swap_cols(long long[:, ::1] a, Py_ssize_t j1, Py_ssize_t j2, Py_ssize_t start, Py_ssize_t nr) nogil:
    cdef Py_ssize_t i
    cdef long long tmp
    if j1 == j2:
        return
    for i in range(start, nr):
        tmp = a[i, j1]
        a[i, j1] = a[i, j2]
        a[i, j2] = tmp


def smith_diagonal(rows):
    arr = np.array(rows, dtype=np.int64, order="C")
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        return []
    cdef long long[:, ::1] a = arr
    cdef Py_ssize_t nr = a.shape[0], nc = a.shape[1]
    cdef Py_ssize_t t = 0, col = 0, i, j
    cdef long long p, q, v
    cdef bint dirty, overflow = False
    diag = []
    while t < nr and col < nc:
        i = -1
        while col < nc:
            i = _min_in_column(a, t, col, nr)
            if i >= 0:
                break
            col += 1
        if col >= nc:
            break
        _swap_rows(a, t, i, nc)
        _swap_cols(a, t, col, t, nr)
        while True:
            p = a[t, t]
            dirty = False
            for i in range(t + 1, nr):
                v = a[i, t]
                if v != 0:
                    q = _floordiv(v, p)
                    for j in range(t, nc):
                        if a[t, j] != 0:
                            a[i, j] -= q * a[t, j]
                            if _abs(a[i, j]) > LIMIT:
                                overflow = True
                    if a[i, t] != 0:
                        dirty = True
            if overflow:
                raise OverflowError("int64 kernel overflow")
            if dirty:
                i = _min_in_column(a, t, t, nr)
                _swap_rows(a, t, i, nc)
                continue
            p = a[t, t]
            for j in range(t + 1, nc):
                v = a[t, j]
                if v != 0:
                    a[t, j] = v - _floordiv(v, p) * p
                    if a[t, j] != 0:
                        dirty = True
            if dirty:
                j = _min_in_row(a, t, nc)
                _swap_cols(a, t, j, t, nr)
                continue
            break
        diag.append(int(_abs(a[t, t])))
        t += 1
        col = t
    return diag
