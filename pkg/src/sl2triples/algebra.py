"""The quotient ``A = U(sl2) / <e^(p-1), f^(p-1)>`` through its action on
``V(0) + V(1) + ... + V(p-2)``.

Elements are never rewritten symbolically. A monomial ``f^a h^b e^c`` is
represented by its block-diagonal action (one block per simple ``V(d)``), and
all claims about ``A`` become rank computations on those images. Flattening
the blocks gives vectors of length ``sum_{i=1}^{p-1} i^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .gfp import FieldMatrix, check_prime, rank_array
from .modules import simple_module


class Monomial(NamedTuple):
    """Normal-ordered word ``f^a h^b e^c``."""

    a: int
    b: int
    c: int


def sigma(m: Monomial) -> Monomial:
    """Anti-automorphism ``e <-> f`` on normal-ordered monomials."""
    return Monomial(m.c, m.b, m.a)


@dataclass(frozen=True, eq=False)
class RegularImage:
    """Block-diagonal action on ``V(0) + ... + V(p-2)``, blocks in that order."""

    p: int
    blocks: tuple[FieldMatrix, ...]

    @property
    def size(self) -> int:
        return sum(b.rows for b in self.blocks)

    def vector(self) -> np.ndarray:
        return np.concatenate([b.array.reshape(-1) for b in self.blocks])

    def matrix(self) -> FieldMatrix:
        return FieldMatrix.block_diag(list(self.blocks), self.p)

    def __matmul__(self, other: "RegularImage") -> "RegularImage":
        return RegularImage(self.p, tuple(x @ y for x, y in zip(self.blocks, other.blocks)))

    def __add__(self, other: "RegularImage") -> "RegularImage":
        return RegularImage(self.p, tuple(x + y for x, y in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "RegularImage") -> "RegularImage":
        return RegularImage(self.p, tuple(x - y for x, y in zip(self.blocks, other.blocks)))

    def __mul__(self, scalar: int) -> "RegularImage":
        return RegularImage(self.p, tuple(x * scalar for x in self.blocks))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegularImage):
            return NotImplemented
        return self.p == other.p and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)


def commutator(x: RegularImage, y: RegularImage) -> RegularImage:
    return x @ y - y @ x


@lru_cache(maxsize=None)
def _generators(p: int) -> tuple[RegularImage, RegularImage, RegularImage]:
    check_prime(p)
    mods = [simple_module(d, p) for d in range(p - 1)]
    return tuple(RegularImage(p, tuple(getattr(m, x) for m in mods)) for x in "EHF")


@lru_cache(maxsize=None)
def _power(p: int, which: int, k: int) -> RegularImage:
    gen = _generators(p)[which]
    if k == 0:
        return RegularImage(p, tuple(FieldMatrix.identity(b.rows, p) for b in gen.blocks))
    return _power(p, which, k - 1) @ gen


def generator_images(p: int) -> tuple[RegularImage, RegularImage, RegularImage]:
    """Images of ``e``, ``h``, ``f``."""
    return _generators(p)


def identity_image(p: int) -> RegularImage:
    return _power(p, 0, 0)


def monomial_image(m: Monomial | Sequence[int], p: int) -> RegularImage:
    """Action of ``f^a h^b e^c``."""
    a, b, c = m
    return _power(p, 2, a) @ _power(p, 1, b) @ _power(p, 0, c)


def image_matrix(monomials: Iterable[Monomial], p: int) -> np.ndarray:
    """Stack flattened images as rows."""
    rows = [monomial_image(m, p).vector() for m in monomials]
    if not rows:
        return np.zeros((0, sum(i * i for i in range(1, p))), dtype=np.int64)
    return np.vstack(rows)


def expected_dimension(p: int) -> int:
    return sum(i * i for i in range(1, p))


def _span_rank(p: int, hcut: int) -> int:
    mons = [Monomial(a, b, c) for a in range(p - 1) for c in range(p - 1) for b in range(hcut)]
    return rank_array(image_matrix(mons, p), p)


def dimension_of_A(p: int) -> int:
    """Rank of all monomial images with ``a, c < p-1``; the h-exponent cutoff
    starts at ``2p`` and doubles until the rank stops growing."""
    check_prime(p)
    cut = 2 * p
    r = _span_rank(p, cut)
    while True:
        r2 = _span_rank(p, 2 * cut)
        if r2 == r:
            return r
        r, cut = r2, 2 * cut


def basis_S(p: int) -> list[Monomial]:
    """``S = union_k S_k``, ``S_k = {f^a h^k e^c : a, c < p-1-k}``."""
    return [
        Monomial(a, k, c)
        for k in range(p - 1)
        for a in range(p - 1 - k)
        for c in range(p - 1 - k)
    ]


def verify_basis_S(p: int) -> bool:
    """Images of ``S`` are independent and span the realization of ``A``."""
    S = basis_S(p)
    if len(S) != expected_dimension(p):
        return False
    r = rank_array(image_matrix(S, p), p)
    return r == len(S) and r == dimension_of_A(p)


def in_span(x: RegularImage, gens: Sequence[RegularImage]) -> bool:
    p = x.p
    if not gens:
        return x.is_zero()
    base = np.vstack([g.vector() for g in gens])
    return rank_array(np.vstack([base, x.vector()]), p) == rank_array(base, p)


def check_power_relations(p: int, kmax: int) -> bool:
    """Check the commutator identities for powers of ``e`` and ``h``.

    For ``1 <= k <= kmax``:
      ``[e^k, h] = -2k e^k``,
      ``[e^k, f] = k h e^(k-1) - k(k-1) e^(k-1)``,
      ``[h^k, f]`` lies in ``span{f h^i : i < k}``.
    """
    check_prime(p)
    if kmax >= p:
        raise ValueError(f"kmax must be < p, got {kmax}")
    e, h, f = generator_images(p)
    for k in range(1, kmax + 1):
        ek = _power(p, 0, k)
        ek1 = _power(p, 0, k - 1)
        if commutator(ek, h) != ek * (-2 * k):
            return False
        if commutator(ek, f) != (h @ ek1) * k - ek1 * (k * (k - 1)):
            return False
        hk = _power(p, 1, k)
        if not in_span(commutator(hk, f), [monomial_image(Monomial(1, i, 0), p) for i in range(k)]):
            return False
    return True
