"""Dense exact linear algebra over the prime field GF(p).

Field elements are plain Python ints reduced into ``[0, p)``; matrices are
immutable :class:`FieldMatrix` values backed by read-only ``int64`` arrays.
All elimination goes through :mod:`sl2triples.kernels`.

Computing over GF(p) instead of an algebraic closure is harmless for the
quantities here: rank, kernels and Jordan types of matrices with entries in
GF(p) do not change under field extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NotInvertible, NotNilpotent, PowerNotZero, ShapeMismatch
from .partitions import Partition

MAX_PRIME = 1 << 16


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Validate that ``p`` is an odd prime below 2**16 and return it."""
    p = int(p)
    if p <= 2 or p >= MAX_PRIME:
        raise ValueError(f"modulus must be an odd prime in (2, 2**16), got {p}")
    if any(p % q == 0 for q in range(3, int(p**0.5) + 1, 2)) or p % 2 == 0:
        raise ValueError(f"modulus {p} is not prime")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Table ``t`` with ``t[a] * a == 1 (mod p)`` for ``a != 0`` (``t[0] = 0``)."""
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, -1, p)
    t.setflags(write=False)
    return t


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return int(inverse_table(p)[a])


@lru_cache(maxsize=None)
def square_roots(p: int) -> dict[int, int]:
    """Map each nonzero square mod p to one fixed square root."""
    roots: dict[int, int] = {}
    for r in range(1, p):
        roots.setdefault(r * r % p, r)
    return roots


@lru_cache(maxsize=None)
def least_nonsquare(p: int) -> int:
    sq = square_roots(p)
    return next(a for a in range(2, p) if a not in sq)


class FieldMatrix:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("_a", "p")

    def __init__(self, entries, p: int):
        a = np.array(entries, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ShapeMismatch("FieldMatrix entries must be two-dimensional")
        a %= p
        a.setflags(write=False)
        self._a = a
        self.p = int(p)

    @classmethod
    def _wrap(cls, arr: np.ndarray, p: int) -> "FieldMatrix":
        # arr must already be reduced and owned by the caller
        m = object.__new__(cls)
        arr.setflags(write=False)
        m._a = arr
        m.p = p
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FieldMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FieldMatrix":
        return cls._wrap(np.eye(n, dtype=np.int64), p)

    @classmethod
    def diag(cls, values: Iterable[int], p: int) -> "FieldMatrix":
        return cls(np.diag(np.array(list(values), dtype=np.int64)), p)

    @classmethod
    def jordan_block(cls, k: int, p: int) -> "FieldMatrix":
        """Nilpotent Jordan block with ones on the superdiagonal."""
        return cls._wrap(np.eye(k, k, 1, dtype=np.int64), p)

    @classmethod
    def block_diag(cls, blocks: Sequence["FieldMatrix"], p: int | None = None) -> "FieldMatrix":
        if not blocks:
            if p is None:
                raise ValueError("empty block list needs an explicit modulus")
            return cls.zeros(0, 0, p)
        p = blocks[0].p if p is None else p
        for b in blocks:
            if b.p != p:
                raise DimensionMismatch("blocks have different moduli")
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = np.zeros((rows, cols), dtype=np.int64)
        r = c = 0
        for b in blocks:
            out[r : r + b.rows, c : c + b.cols] = b._a
            r += b.rows
            c += b.cols
        return cls._wrap(out, p)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix._wrap(self._a.T.copy(), self.p)

    def is_zero(self) -> bool:
        return not self._a.any()

    def trace(self) -> int:
        return int(np.trace(self._a)) % self.p

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def _check(self, other: "FieldMatrix") -> None:
        if other.p != self.p:
            raise DimensionMismatch(f"moduli differ: {self.p} vs {other.p}")

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return FieldMatrix._wrap(kernels.matmul(self._a, other._a, self.p), self.p)

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return FieldMatrix._wrap((self._a + other._a) % self.p, self.p)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return FieldMatrix._wrap((self._a - other._a) % self.p, self.p)

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix._wrap((-self._a) % self.p, self.p)

    def __mul__(self, scalar: int) -> "FieldMatrix":
        if isinstance(scalar, FieldMatrix):
            raise TypeError("use @ for matrix products")
        return FieldMatrix._wrap((self._a * (int(scalar) % self.p)) % self.p, self.p)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"FieldMatrix({self._a.tolist()}, p={self.p})"

    def __pow__(self, k: int) -> "FieldMatrix":
        if not self.is_square:
            raise ShapeMismatch("power of a non-square matrix")
        result = FieldMatrix.identity(self.rows, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result


def bracket(x: FieldMatrix, y: FieldMatrix) -> FieldMatrix:
    """Commutator ``xy - yx``."""
    return x @ y - y @ x


# -- elimination-based operations -------------------------------------------


def rank(m: FieldMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, piv = kernels.rref(m.array, m.p)
    return len(piv)


def rank_array(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(kernels.rref(a, p)[1])


def nullspace_array(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{x : a @ x = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = kernels.rref(a, p)
    free = [j for j in range(n) if j not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for r, c in enumerate(piv):
            basis[k, c] = (-R[r, j]) % p
    return basis


def row_space_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Reduced basis (as rows) of the row span of ``a``."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    R, piv = kernels.rref(a, p)
    return R[: len(piv)].copy()


@dataclass(frozen=True)
class AffineSpace:
    """Solution set ``particular + span(kernel rows)`` over GF(p)."""

    particular: np.ndarray
    kernel: np.ndarray
    p: int

    def __post_init__(self):
        self.particular.setflags(write=False)
        self.kernel.setflags(write=False)

    @property
    def dim(self) -> int:
        return int(self.kernel.shape[0])

    @property
    def ambient(self) -> int:
        return int(self.particular.shape[0])

    @property
    def size(self) -> int:
        return self.p**self.dim

    def point(self, coeffs: Sequence[int]) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.int64)
        if self.dim == 0:
            return self.particular.copy()
        return (self.particular + c @ self.kernel) % self.p

    def contains(self, x: Sequence[int]) -> bool:
        d = (np.asarray(x, dtype=np.int64) - self.particular) % self.p
        if not d.any():
            return True
        if self.dim == 0:
            return False
        return rank_array(np.vstack([self.kernel, d]), self.p) == self.dim

    def lex_min(self) -> np.ndarray:
        """Lexicographically least point (coordinates compared as ints in ``[0, p)``)."""
        p = self.p
        x = self.particular.copy()
        K = self.kernel.copy()
        for j in range(x.shape[0]):
            if K.shape[0] == 0:
                break
            nz = np.flatnonzero(K[:, j])
            if nz.size == 0:
                continue
            k = int(nz[0])
            row = K[k] * pow(int(K[k, j]), -1, p) % p
            x = (x - x[j] * row) % p
            K = np.delete(K, k, axis=0)
            K = (K - np.outer(K[:, j], row)) % p
        return x

    def points(self, chunk: int = 4096) -> Iterator[np.ndarray]:
        """All points, in mixed-radix order of the kernel coefficients."""
        for block in self.point_blocks(chunk):
            yield from block

    def point_blocks(self, chunk: int = 4096) -> Iterator[np.ndarray]:
        """All points in chunks of at most ``chunk`` rows."""
        k, p = self.dim, self.p
        if k == 0:
            yield self.particular.reshape(1, -1).copy()
            return
        total = p**k
        powers = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            coeffs = (idx[:, None] // powers[None, :]) % p
            yield (self.particular[None, :] + coeffs @ self.kernel) % p


def solve_affine_array(a: np.ndarray, b: np.ndarray, p: int) -> AffineSpace | None:
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    m, n = a.shape
    if b.shape[0] != m:
        raise DimensionMismatch(f"system has {m} rows but right-hand side has {b.shape[0]}")
    if m == 0:
        return AffineSpace(np.zeros(n, dtype=np.int64), np.eye(n, dtype=np.int64), p)
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    R, piv = kernels.rref(aug, p, n + 1)
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    free = [j for j in range(n) if j not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for r, c in enumerate(piv):
            basis[k, c] = (-R[r, j]) % p
    return AffineSpace(x, basis, p)


def solve_affine(a: FieldMatrix, b: Sequence[int]) -> AffineSpace | None:
    """Solve ``a @ x = b``; ``None`` when the system is inconsistent."""
    return solve_affine_array(a.array, np.asarray(b, dtype=np.int64), a.p)


def kernel(m: FieldMatrix) -> np.ndarray:
    return nullspace_array(m.array, m.p)


def det(m: FieldMatrix) -> int:
    if not m.is_square:
        raise ShapeMismatch("determinant of a non-square matrix")
    return det_array(m.array, m.p)


def det_array(a: np.ndarray, p: int) -> int:
    A = np.array(a, dtype=np.int64) % p
    n = A.shape[0]
    result = 1
    for col in range(n):
        nz = np.flatnonzero(A[col:, col])
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            result = -result
        pv = int(A[col, col])
        result = result * pv % p
        ipv = pow(pv, -1, p)
        below = A[col + 1 :, col].copy()
        if below.any():
            A[col + 1 :, col:] = (A[col + 1 :, col:] - np.outer(below * ipv % p, A[col, col:])) % p
    return result % p


def inverse(m: FieldMatrix) -> FieldMatrix:
    if not m.is_square:
        raise NotInvertible("non-square matrix")
    n = m.rows
    aug = np.concatenate([m.array, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = kernels.rref(aug, m.p, n)
    if len(piv) < n:
        raise NotInvertible("matrix is singular")
    return FieldMatrix._wrap(np.ascontiguousarray(R[:, n:]), m.p)


def is_invertible(m: FieldMatrix) -> bool:
    return m.is_square and rank(m) == m.rows


def conjugate(g: FieldMatrix, x: FieldMatrix) -> FieldMatrix:
    """``g x g^-1``."""
    if g.shape != x.shape:
        raise ShapeMismatch(f"conjugator shape {g.shape} vs {x.shape}")
    return g @ x @ inverse(g)


def is_nilpotent(x: FieldMatrix) -> bool:
    n = x.rows
    y, k = x, 1
    while k < n:
        y = y @ y
        k *= 2
    return y.is_zero()


def jordan_type(x: FieldMatrix) -> Partition:
    """Jordan type of a nilpotent square matrix."""
    if not x.is_square:
        raise ShapeMismatch("Jordan type of a non-square matrix")
    n = x.rows
    if n == 0:
        return Partition(())
    if not is_nilpotent(x):
        raise NotNilpotent("matrix is not nilpotent")
    ranks = [n]
    y = x
    while True:
        r = rank(y)
        ranks.append(r)
        if r == 0:
            break
        y = y @ x
    ranks.append(0)
    parts: list[int] = []
    for i in range(1, len(ranks) - 1):
        parts.extend([i] * (ranks[i - 1] - 2 * ranks[i] + ranks[i + 1]))
    return Partition(sorted(parts, reverse=True))


def jordan_type_array(a: np.ndarray, p: int) -> Partition:
    return jordan_type(FieldMatrix(a, p))


def nilpotent_exp(x: FieldMatrix, s: int = 1) -> FieldMatrix:
    """Truncated exponential ``sum_{i<p} (s x)^i / i!``; requires ``x**p == 0``."""
    p = x.p
    if not (x**p).is_zero():
        raise PowerNotZero("x**p != 0; the truncated exponential is not group-like")
    sx = x * s
    term = FieldMatrix.identity(x.rows, p)
    total = term
    for i in range(1, p):
        term = (term @ sx) * inv(i, p)
        if term.is_zero():
            break
        total = total + term
    return total


def enumerate_vectors(n: int, p: int) -> Iterator[tuple[int, ...]]:
    """All vectors of GF(p)^n in lexicographic order (test oracle helper)."""
    return itertools.product(range(p), repeat=n)
