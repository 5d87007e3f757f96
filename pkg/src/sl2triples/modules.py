"""Matrix models of sl2-modules over GF(p) and module isomorphism testing.

Basis conventions for the simple module ``V(d)`` and the baby Verma module
``Z(d)``: vectors ``v_0, ..., v_k`` with

    h v_i = (d - 2i) v_i,   e v_i = i (d - i + 1) v_{i-1},   f v_i = v_{i+1},

so ``E`` sits on the superdiagonal and ``F`` on the subdiagonal.

Isomorphism over GF(p) is decided by searching the intertwiner space for an
invertible element. Two modules defined over GF(p) that become isomorphic over
an extension field are already isomorphic over GF(p) (Noether-Deuring), so
these answers are valid over the algebraic closure as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, DOutOfRange, ModulusMismatch, NotNilpotent, RelationsFail
from .gfp import FieldMatrix, bracket, check_prime, jordan_type, nullspace_array, rank_array
from .partitions import Partition


@dataclass(frozen=True, eq=False)
class Sl2Module:
    """A module given by the action matrices of ``e``, ``h`` and ``f``."""

    E: FieldMatrix
    H: FieldMatrix
    F: FieldMatrix

    def __post_init__(self):
        p = self.E.p
        if not (self.H.p == self.F.p == p):
            raise ModulusMismatch("action matrices have different moduli")
        n = self.E.rows
        for x in (self.E, self.H, self.F):
            if x.shape != (n, n):
                raise RelationsFail("action matrices must be square of equal size")
        if not check_relations(self.E, self.H, self.F):
            raise RelationsFail("[h,e]=2e, [h,f]=-2f, [e,f]=h do not all hold")

    @property
    def dim(self) -> int:
        return self.E.rows

    @property
    def p(self) -> int:
        return self.E.p

    @property
    def actions(self) -> tuple[FieldMatrix, FieldMatrix, FieldMatrix]:
        return self.E, self.H, self.F

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "p": self.p,
            "actE": self.E.tolist(),
            "actH": self.H.tolist(),
            "actF": self.F.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Sl2Module":
        p = int(obj["p"])
        return cls(FieldMatrix(obj["actE"], p), FieldMatrix(obj["actH"], p), FieldMatrix(obj["actF"], p))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sl2Module):
            return NotImplemented
        return self.actions == other.actions

    def __hash__(self) -> int:
        return hash(self.actions)


def check_relations(e: FieldMatrix, h: FieldMatrix, f: FieldMatrix) -> bool:
    return (
        bracket(h, e) == e * 2
        and bracket(h, f) == f * (-2)
        and bracket(e, f) == h
    )


def _chain_module(d: int, length: int, p: int) -> Sl2Module:
    E = np.zeros((length, length), dtype=np.int64)
    F = np.zeros((length, length), dtype=np.int64)
    for i in range(1, length):
        E[i - 1, i] = i * (d - i + 1)
        F[i, i - 1] = 1
    H = np.diag([d - 2 * i for i in range(length)])
    return Sl2Module(FieldMatrix(E, p), FieldMatrix(H, p), FieldMatrix(F, p))


def simple_module(d: int, p: int) -> Sl2Module:
    """The simple module V(d), ``0 <= d <= p-1``, of dimension ``d + 1``."""
    check_prime(p)
    if not 0 <= d <= p - 1:
        raise DOutOfRange(f"d must lie in [0, {p - 1}], got {d}")
    return _chain_module(d, d + 1, p)


def baby_verma(d: int, p: int) -> Sl2Module:
    """The p-dimensional baby Verma module Z(d) for ``d`` in GF(p)."""
    check_prime(p)
    return _chain_module(int(d) % p, p, p)


def direct_sum(ms: Sequence[Sl2Module], p: int | None = None) -> Sl2Module:
    if not ms:
        if p is None:
            raise ValueError("direct sum of no modules needs an explicit modulus")
        z = FieldMatrix.zeros(0, 0, p)
        return Sl2Module(z, z, z)
    p = ms[0].p
    if any(m.p != p for m in ms):
        raise ModulusMismatch("summands have different moduli")
    return Sl2Module(
        FieldMatrix.block_diag([m.E for m in ms]),
        FieldMatrix.block_diag([m.H for m in ms]),
        FieldMatrix.block_diag([m.F for m in ms]),
    )


def dual_module(m: Sl2Module) -> Sl2Module:
    """Contragredient module: each action ``X`` becomes ``-X^T``."""
    return Sl2Module(-m.E.T, -m.H.T, -m.F.T)


def sigma_twist(m: Sl2Module) -> Sl2Module:
    """Twist by the automorphism ``e <-> f, h -> -h`` of sl2."""
    return Sl2Module(m.F, -m.H, m.E)


def module_from_triple(t) -> Sl2Module:
    """Module of the natural representation of a triple ``(e, h, f)``."""
    return Sl2Module(t.e, t.h, t.f)


def restricted_sum(ds: Sequence[int], p: int) -> Sl2Module:
    """``V(d_1) + V(d_2) + ...`` with blocks in the given order."""
    return direct_sum([simple_module(d, p) for d in ds], p)


# -- intertwiners -------------------------------------------------------------


def _intertwiner_system(src: Sl2Module, tgt: Sl2Module) -> np.ndarray:
    # phi (tgt.dim x src.dim), row-major: phi X_src - X_tgt phi = 0
    a, b = src.dim, tgt.dim
    I_a = np.eye(a, dtype=np.int64)
    I_b = np.eye(b, dtype=np.int64)
    rows = [
        np.kron(I_b, xs.array.T) - np.kron(xt.array, I_a)
        for xs, xt in zip(src.actions, tgt.actions)
    ]
    return np.vstack(rows) % src.p


@dataclass(frozen=True, eq=False)
class HomSpace:
    source: Sl2Module
    target: Sl2Module
    basis: tuple[FieldMatrix, ...] = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.source.p

    def combination(self, coeffs: Sequence[int]) -> FieldMatrix:
        out = np.zeros((self.target.dim, self.source.dim), dtype=np.int64)
        for c, b in zip(coeffs, self.basis):
            if c:
                out += int(c) * b.array
        return FieldMatrix(out, self.p)

    def basis_array(self) -> np.ndarray:
        """Basis flattened to a ``(dim, target.dim * source.dim)`` array."""
        if not self.basis:
            return np.zeros((0, self.target.dim * self.source.dim), dtype=np.int64)
        return np.stack([b.array.reshape(-1) for b in self.basis])


def hom_space(m: Sl2Module, n: Sl2Module) -> HomSpace:
    """All module maps ``m -> n``."""
    if m.p != n.p:
        raise ModulusMismatch("modules have different moduli")
    if m.dim == 0 or n.dim == 0:
        return HomSpace(m, n, ())
    ker = nullspace_array(_intertwiner_system(m, n), m.p)
    basis = tuple(FieldMatrix(row.reshape(n.dim, m.dim), m.p) for row in ker)
    return HomSpace(m, n, basis)


def hom_dim(m: Sl2Module, n: Sl2Module) -> int:
    if m.dim == 0 or n.dim == 0:
        return 0
    sys_ = _intertwiner_system(m, n)
    return sys_.shape[1] - rank_array(sys_, m.p)


@dataclass(frozen=True)
class Isomorphism:
    """Outcome of an isomorphism test; truthy iff isomorphic."""

    isomorphic: bool
    witness: FieldMatrix | None = None
    hom_dim: int = 0
    searched: int = 0

    def __bool__(self) -> bool:
        return self.isomorphic


def _find_invertible(hom: HomSpace, seed: int, samples: int, exhaustive_limit: int) -> tuple[FieldMatrix | None, int]:
    p, n, D = hom.p, hom.target.dim, hom.dim
    B = hom.basis_array()
    rng = np.random.default_rng(seed)
    tried = 0
    # random first: when an isomorphism exists the singular elements of Hom form
    # a proper subvariety, so a sample is invertible with probability bounded away
    # from 0; the exhaustive pass below makes a negative answer definitive.
    for _ in range(samples):
        c = rng.integers(0, p, size=D)
        tried += 1
        cand = (c @ B % p).reshape(n, n)
        if rank_array(cand, p) == n:
            return FieldMatrix(cand, p), tried
    total = p**D
    if total > exhaustive_limit:
        raise BudgetExceeded(
            f"no invertible intertwiner in {samples} samples and exhaustive search of {total} "
            f"points exceeds the limit {exhaustive_limit}",
            spent=tried,
        )
    powers = p ** np.arange(D - 1, -1, -1, dtype=np.int64)
    chunk = 4096
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % p
        cands = (coeffs @ B % p).reshape(-1, n, n)
        for cand in cands:
            tried += 1
            if rank_array(cand, p) == n:
                return FieldMatrix(cand, p), tried
    return None, tried


def is_isomorphic(
    m: Sl2Module,
    n: Sl2Module,
    seed: int = 0,
    samples: int = 256,
    exhaustive_limit: int = 10**6,
) -> Isomorphism:
    """Decide ``m ~= n`` over GF(p); on success ``witness @ m.X == n.X @ witness``."""
    if m.p != n.p:
        raise ModulusMismatch("modules have different moduli")
    if m.dim != n.dim:
        return Isomorphism(False)
    if m.dim == 0:
        return Isomorphism(True, FieldMatrix.zeros(0, 0, m.p))
    if m == n:
        return Isomorphism(True, FieldMatrix.identity(m.dim, m.p), hom_dim(m, m))
    # cheap invariants first
    if _signature(m) != _signature(n):
        return Isomorphism(False)
    d_mn = hom_dim(m, n)
    if d_mn != hom_dim(m, m) or d_mn != hom_dim(n, n):
        return Isomorphism(False, hom_dim=d_mn)
    hom = hom_space(m, n)
    w, tried = _find_invertible(hom, seed, samples, exhaustive_limit)
    return Isomorphism(w is not None, w, hom.dim, tried)


def _signature(m: Sl2Module) -> tuple:
    p = m.p
    sig = []
    for x in m.actions:
        ranks = []
        y = x
        for _ in range(min(m.dim, 2 * p) + 1):
            r = rank_array(y.array, p)
            ranks.append(r)
            if r == 0:
                break
            y = y @ x
        sig.append(tuple(ranks))
    if p <= 64:
        # eigenvalue multiplicities of h, via rank(h - c)
        I = np.eye(m.dim, dtype=np.int64)
        sig.append(tuple(rank_array(m.H.array - c * I, p) for c in range(p)))
    return tuple(sig)


# -- decomposition and invariant forms ----------------------------------------


@dataclass(frozen=True)
class NotSemisimpleWitness:
    """The candidate ``sum V(d)`` read off from Jordan types failed to match."""

    candidate: tuple[int, ...] | None
    reason: str


def decompose_restricted(m: Sl2Module, seed: int = 0) -> tuple[int, ...] | NotSemisimpleWitness:
    """Multiset of ``d`` with ``m ~= sum V(d)`` over ``d <= p-2``, or a witness."""
    p = m.p
    try:
        lam = jordan_type(m.E)
    except NotNilpotent:
        return NotSemisimpleWitness(None, "e does not act nilpotently")
    ds = tuple(sorted((part - 1 for part in lam), reverse=True))
    if any(d > p - 2 for d in ds):
        return NotSemisimpleWitness(ds, f"e has a Jordan block of size >= {p}")
    if is_isomorphic(m, restricted_sum(ds, p), seed=seed):
        return ds
    return NotSemisimpleWitness(ds, "module is not isomorphic to the candidate sum")


def invariant_form(m: Sl2Module) -> list[FieldMatrix]:
    """Basis of Gram matrices ``G`` with ``X^T G + G X = 0`` for all actions."""
    n, p = m.dim, m.p
    if n == 0:
        return []
    I = np.eye(n, dtype=np.int64)
    rows = [np.kron(x.array.T, I) + np.kron(I, x.array.T) for x in m.actions]
    ker = nullspace_array(np.vstack(rows) % p, p)
    return [FieldMatrix(row.reshape(n, n), p) for row in ker]


def jordan_types(m: Sl2Module) -> tuple[Partition, Partition]:
    return jordan_type(m.E), jordan_type(m.F)


# -- two-step filtrations -----------------------------------------------------


def extension_space(d: int, c: int, p: int) -> np.ndarray:
    """Corner blocks ``(B_E, B_H, B_F)`` making ``[[X_{V(d)}, B_X], [0, X_{V(c)}]]``
    a module, as rows of the flattened triple of ``(d+1) x (c+1)`` blocks."""
    top, bot = simple_module(d, p), simple_module(c, p)
    a, b = top.dim, bot.dim
    k = a * b
    I_a = np.eye(a, dtype=np.int64)
    I_b = np.eye(b, dtype=np.int64)

    def left(x):  # B -> x_top B
        return np.kron(x.array, I_b)

    def right(y):  # B -> B y_bot
        return np.kron(I_a, y.array.T)

    E1, H1, F1 = top.actions
    E2, H2, F2 = bot.actions
    Z = np.zeros((k, k), dtype=np.int64)
    # corner of [X, Y] is X1 B_Y + B_X Y2 - Y1 B_X - B_Y X2
    def corner(x1, x2, y1, y2, ix, iy):
        cols = [Z, Z, Z]
        cols[ix] = cols[ix] + right(y2) - left(y1)
        cols[iy] = cols[iy] + left(x1) - right(x2)
        return cols

    rows = []
    # [h, e] - 2e
    c_he = corner(H1, H2, E1, E2, 1, 0)
    c_he[0] = c_he[0] - 2 * np.eye(k, dtype=np.int64)
    rows.append(np.hstack(c_he))
    # [h, f] + 2f
    c_hf = corner(H1, H2, F1, F2, 1, 2)
    c_hf[2] = c_hf[2] + 2 * np.eye(k, dtype=np.int64)
    rows.append(np.hstack(c_hf))
    # [e, f] - h
    c_ef = corner(E1, E2, F1, F2, 0, 2)
    c_ef[1] = c_ef[1] - np.eye(k, dtype=np.int64)
    rows.append(np.hstack(c_ef))
    return nullspace_array(np.vstack(rows) % p, p)


def filtered_module(d: int, c: int, p: int, corners: np.ndarray) -> Sl2Module:
    """Module ``[[V(d), *], [0, V(c)]]`` with the given flattened corner blocks."""
    top, bot = simple_module(d, p), simple_module(c, p)
    a, b = top.dim, bot.dim
    k = a * b
    mats = []
    for i, (x1, x2) in enumerate(zip(top.actions, bot.actions)):
        M = np.zeros((a + b, a + b), dtype=np.int64)
        M[:a, :a] = x1.array
        M[a:, a:] = x2.array
        M[:a, a:] = np.asarray(corners[i * k : (i + 1) * k]).reshape(a, b)
        mats.append(FieldMatrix(M, p))
    return Sl2Module(*mats)


def random_filtered_module(d: int, c: int, p: int, rng: np.random.Generator) -> Sl2Module:
    basis = extension_space(d, c, p)
    coeffs = rng.integers(0, p, size=basis.shape[0])
    return filtered_module(d, c, p, coeffs @ basis % p)
