# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) elimination kernels.

Entries are kept reduced in [0, p) with p < 2**16, so every product of two
entries fits in a signed 64-bit integer without overflow.
"""

import numpy as np
cimport numpy as cnp

from libc.stdint cimport int64_t

cnp.import_array()


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    # extended Euclid; a is nonzero mod p
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref(a, long p, long ncols=-1):
    """Reduced row echelon form of ``a`` over GF(p).

    Only the first ``ncols`` columns are eligible as pivots (all by default);
    row operations still act on the full width. Returns ``(R, pivots)``.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=2] R = np.array(a, dtype=np.int64, order="C") % p
    cdef Py_ssize_t m = R.shape[0], n = R.shape[1]
    cdef Py_ssize_t limit = n if ncols < 0 else min(<Py_ssize_t>ncols, n)
    cdef int64_t[:, ::1] M = R
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef int64_t inv, factor, tmp
    pivots = []
    with nogil:
        for col in range(limit):
            if row >= m:
                break
            piv = -1
            for i in range(row, m):
                if M[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != row:
                for j in range(n):
                    tmp = M[row, j]
                    M[row, j] = M[piv, j]
                    M[piv, j] = tmp
            inv = _inv(M[row, col], p)
            if inv != 1:
                for j in range(col, n):
                    M[row, j] = (M[row, j] * inv) % p
            for i in range(m):
                if i == row:
                    continue
                factor = M[i, col]
                if factor == 0:
                    continue
                factor = p - factor
                for j in range(col, n):
                    if M[row, j] != 0:
                        M[i, j] = (M[i, j] + factor * M[row, j]) % p
            with gil:
                pivots.append(col)
            row += 1
    return R, tuple(pivots)


def matmul(a, b, long p):
    """Product of two reduced matrices over GF(p)."""
    cdef const int64_t[:, ::1] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef const int64_t[:, ::1] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t m = A.shape[0], k = A.shape[1], n = B.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((m, n), dtype=np.int64)
    cdef int64_t[:, ::1] C = out
    cdef Py_ssize_t i, j, t
    cdef int64_t acc, aval
    if B.shape[0] != k:
        raise ValueError("inner dimensions differ")
    with nogil:
        for i in range(m):
            for t in range(k):
                aval = A[i, t]
                if aval == 0:
                    continue
                for j in range(n):
                    C[i, j] += aval * B[t, j]
            # row sums stay below k * p**2 < 2**63 for k < 2**31
            for j in range(n):
                C[i, j] %= p
    return out
