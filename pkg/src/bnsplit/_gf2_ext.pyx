# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) elimination kernels; same API as ``_gf2_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, uint8_t, int64_t

cnp.import_array()


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _lowest(uint64_t v) nogil:
    return __builtin_ctzll(v)


def reduce_level(uint64_t[:, ::1] mat, row_q, col_q, int shift,
                 uint8_t[::1] row_alive, uint8_t[::1] col_alive):
    """Cancel every pivot ``(x, y)`` with ``col_q[y] == row_q[x] + shift``.

    See ``_gf2_py.reduce_level`` for the exact pivot order, which this
    kernel reproduces.
    """
    cdef Py_ssize_t nrows = mat.shape[0], nwords = mat.shape[1]
    cdef Py_ssize_t ncols = col_alive.shape[0]
    cdef int64_t[::1] rq = np.ascontiguousarray(row_q, dtype=np.int64)
    cdef int64_t[::1] cq = np.ascontiguousarray(col_q, dtype=np.int64)
    pivots = []
    if nrows == 0 or ncols == 0:
        return pivots
    cdef int64_t qmin = 0, qmax = 0
    cdef Py_ssize_t c, x, z, w, y, t, wy
    cdef bint first = True
    for c in range(ncols):
        if first or cq[c] < qmin:
            qmin = cq[c]
        if first or cq[c] > qmax:
            qmax = cq[c]
        first = False
    cdef Py_ssize_t nq = qmax - qmin + 1
    cdef uint64_t[:, ::1] masks = np.zeros((nq, nwords), dtype=np.uint64)
    for c in range(ncols):
        if col_alive[c]:
            masks[cq[c] - qmin, c >> 6] |= (<uint64_t>1) << (c & 63)

    cdef Py_ssize_t[::1] live = np.empty(nrows, dtype=np.intp)
    cdef Py_ssize_t nlive = 0, li, lj
    cdef bint nonzero
    for x in range(nrows):
        if row_alive[x]:
            nonzero = False
            for w in range(nwords):
                if mat[x, w]:
                    nonzero = True
                    break
            if nonzero:
                live[nlive] = x
                nlive += 1

    cdef bint found = True
    cdef uint64_t cand, bit
    cdef int64_t target
    while found:
        found = False
        for li in range(nlive):
            x = live[li]
            if not row_alive[x]:
                continue
            target = rq[x] + shift
            if target < qmin or target > qmax:
                continue
            t = target - qmin
            y = -1
            for w in range(nwords):
                cand = mat[x, w] & masks[t, w]
                if cand:
                    y = w * 64 + _lowest(cand)
                    break
            if y < 0:
                continue
            wy = y >> 6
            bit = (<uint64_t>1) << (y & 63)
            for lj in range(nlive):
                z = live[lj]
                if z != x and (mat[z, wy] & bit) and row_alive[z]:
                    for w in range(nwords):
                        mat[z, w] ^= mat[x, w]
            row_alive[x] = 0
            col_alive[y] = 0
            masks[cq[y] - qmin, wy] &= ~bit
            pivots.append((x, y))
            found = True
        lj = 0
        for li in range(nlive):
            if row_alive[live[li]]:
                live[lj] = live[li]
                lj += 1
        nlive = lj
    return pivots


def rank(mat):
    work = np.array(mat, dtype=np.uint64, copy=True, order="C")
    r = work.shape[0]
    c = work.shape[1] * 64
    return len(reduce_level(work, np.zeros(r, dtype=np.int64), np.zeros(c, dtype=np.int64),
                            0, np.ones(r, dtype=np.uint8), np.ones(c, dtype=np.uint8)))
