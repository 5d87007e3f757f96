"""Nondegenerate bilinear forms over GF(p): normal forms and congruences.

A symmetric form over GF(p) (p odd) is determined up to congruence by its
rank and the square class of its determinant; an alternating form only by
its rank. Both facts are used to move a triple built around block forms onto
a fixed standard Gram matrix.
"""

from __future__ import annotations

import numpy as np

from .errors import NoSolution, NotInvertible, ShapeMismatch
from .gfp import FieldMatrix, det, inv, inverse, least_nonsquare, nullspace_array, square_roots


def is_symmetric(g: FieldMatrix) -> bool:
    return g.is_square and g == g.T


def is_alternating(g: FieldMatrix) -> bool:
    return g.is_square and (g + g.T).is_zero() and not np.diagonal(g.array).any()


def is_square_class(a: int, p: int) -> bool:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no square class")
    return a in square_roots(p)


def _orthogonal_basis(G: np.ndarray, p: int) -> np.ndarray:
    """Columns ``P`` with ``P^T G P`` diagonal, for symmetric invertible ``G``."""
    n = G.shape[0]
    W = np.eye(n, dtype=np.int64)  # columns span the part still to be split off
    cols = []
    while W.shape[1]:
        M = (W.T @ G % p) @ W % p
        k = M.shape[0]
        diag = np.flatnonzero(np.diagonal(M))
        if diag.size:
            v = np.zeros(k, dtype=np.int64)
            v[diag[0]] = 1
        else:
            i, j = map(int, np.argwhere(M)[0])
            v = np.zeros(k, dtype=np.int64)
            v[i] = v[j] = 1  # norm 2 M[i,j] != 0 since p is odd
        w = W @ v % p
        cols.append(w)
        # complement: vectors of span(W) orthogonal to w
        rest = nullspace_array((v @ M % p).reshape(1, -1), p)
        W = W @ rest.T % p if rest.size else np.zeros((n, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def symmetric_normal_basis(g: FieldMatrix) -> tuple[FieldMatrix, int]:
    """Invertible ``B`` with ``B^T g B = diag(1, ..., 1, delta)``.

    ``delta`` is ``1`` or the least non-square, according to the square class
    of ``det g``.
    """
    if not is_symmetric(g):
        raise ShapeMismatch("form is not symmetric")
    if det(g) == 0:
        raise NotInvertible("form is degenerate")
    p, n = g.p, g.rows
    G = g.array
    P = _orthogonal_basis(G, p)
    norms = [int(x) for x in np.diagonal((P.T @ G % p) @ P % p)]
    roots = square_roots(p)
    nu = least_nonsquare(p)
    ones, pending = [], []
    for j, a in enumerate(norms):
        col = P[:, j]
        if a in roots:
            ones.append(col * inv(roots[a], p) % p)
        else:
            # a = nu * r^2; rescale to norm nu
            r = roots[a * inv(nu, p) % p]
            pending.append(col * inv(r, p) % p)
    # two vectors of norm nu span a plane that also has an orthonormal basis
    target = inv(nu, p)
    xy = next((x, y) for x in range(p) for y in range(p) if (x * x + y * y) % p == target)
    x, y = xy
    while len(pending) >= 2:
        u, w = pending.pop(), pending.pop()
        ones.append((x * u + y * w) % p)
        ones.append((-y * u + x * w) % p)
    B = np.stack(ones + pending, axis=1) % p
    delta = nu if pending else 1
    return FieldMatrix(B, p), delta


def symplectic_normal_basis(g: FieldMatrix) -> FieldMatrix:
    """Invertible ``B`` with ``B^T g B = [[0, I], [-I, 0]]``."""
    if not is_alternating(g):
        raise ShapeMismatch("form is not alternating")
    if det(g) == 0:
        raise NotInvertible("form is degenerate")
    p, n = g.p, g.rows
    G = g.array
    W = np.eye(n, dtype=np.int64)
    es, fs = [], []
    while W.shape[1]:
        M = (W.T @ G % p) @ W % p
        i, j = map(int, np.argwhere(M)[0])
        k = M.shape[0]
        a = np.zeros(k, dtype=np.int64)
        b = np.zeros(k, dtype=np.int64)
        a[i] = 1
        b[j] = inv(int(M[i, j]), p)
        es.append(W @ a % p)
        fs.append(W @ b % p)
        rest = nullspace_array(np.stack([a @ M % p, b @ M % p]), p)
        W = W @ rest.T % p if rest.size else np.zeros((n, 0), dtype=np.int64)
    return FieldMatrix(np.stack(es + fs, axis=1), p)


def congruence(g_src: FieldMatrix, g_dst: FieldMatrix) -> FieldMatrix:
    """Invertible ``P`` with ``P^T g_dst P = g_src``.

    If ``x`` preserves ``g_src`` infinitesimally then ``P x P^-1`` preserves
    ``g_dst``. Raises :class:`NoSolution` when the forms are not congruent.
    """
    if g_src.shape != g_dst.shape:
        raise ShapeMismatch(f"forms of shapes {g_src.shape} and {g_dst.shape}")
    if is_symmetric(g_src) and is_symmetric(g_dst):
        b_src, d_src = symmetric_normal_basis(g_src)
        b_dst, d_dst = symmetric_normal_basis(g_dst)
        if d_src != d_dst:
            raise NoSolution("symmetric forms have different discriminants")
    elif is_alternating(g_src) and is_alternating(g_dst):
        b_src = symplectic_normal_basis(g_src)
        b_dst = symplectic_normal_basis(g_dst)
    else:
        raise NoSolution("forms are of different types")
    return b_dst @ inverse(b_src)


def forms_congruent(g1: FieldMatrix, g2: FieldMatrix) -> bool:
    try:
        congruence(g1, g2)
    except NoSolution:
        return False
    return True


def preserves_form(x: FieldMatrix, g: FieldMatrix) -> bool:
    """``x`` is an isometry: ``x^T g x = g``."""
    return x.T @ g @ x == g


def infinitesimal_isometry(x: FieldMatrix, g: FieldMatrix) -> bool:
    """``x^T g + g x = 0``."""
    return (x.T @ g + g @ x).is_zero()
