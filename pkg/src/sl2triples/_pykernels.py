"""Pure-Python (numpy) fallback for the compiled GF(p) kernels.

Same signatures and results as ``_ckernels``; row operations are vectorized
per pivot.
"""

from __future__ import annotations

import numpy as np


def rref(a, p: int, ncols: int = -1):
    """Reduced row echelon form of ``a`` over GF(p); returns ``(R, pivots)``."""
    R = np.array(a, dtype=np.int64, order="C") % p
    m, n = R.shape
    limit = n if ncols < 0 else min(ncols, n)
    pivots = []
    row = 0
    for col in range(limit):
        if row >= m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        inv = pow(int(R[row, col]), -1, p)
        if inv != 1:
            R[row, col:] = (R[row, col:] * inv) % p
        factors = R[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            R[np.ix_(hit, np.arange(col, n))] = (
                R[np.ix_(hit, np.arange(col, n))] - np.outer(factors[hit], R[row, col:])
            ) % p
        pivots.append(col)
        row += 1
    return R, tuple(pivots)


def matmul(a, b, p: int):
    """Product of two reduced matrices over GF(p)."""
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
