"""Classical groups, explicit sl2-triples and conjugacy of triples over GF(p).

Triples for orbits inside the maximal variety are realized as actions of
direct sums of simple modules ``V(d)``. For the groups with a form, the Gram
matrix is assembled block by block around the module decomposition:

* a single ``V(d)`` carries the invariant form ``(v_i, v_{d-i}) = (-1)^i``,
  symmetric when ``d`` is even and alternating when ``d`` is odd;
* a pair ``V(d) + V(d)*`` carries the hyperbolic pairing
  ``[[0, I], [eps I, 0]]`` with ``eps = +1`` (orthogonal) or ``-1`` (symplectic).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BlockDataMissing,
    BudgetExceeded,
    FPowerNotZero,
    HNotDiagonal,
    InvalidLabel,
    NoSolution,
    NotInAlgebra,
    OutsideMaxVariety,
    RankTooSmall,
    RelationsFail,
    ShapeMismatch,
)
from .forms import congruence, is_alternating, is_square_class, is_symmetric
from .gfp import (
    FieldMatrix,
    check_prime,
    conjugate,
    det,
    det_array,
    inverse,
    jordan_type,
    least_nonsquare,
    nilpotent_exp,
    nullspace_array,
    rank_array,
    solve_affine_array,
)
from .modules import Sl2Module, baby_verma, check_relations, hom_space, is_isomorphic, simple_module
from .partitions import (
    GroupKind,
    OrbitLabel,
    Partition,
    check_label,
    check_rank,
    in_variety,
    is_very_even,
    max_variety,
)

SO_SEARCH_CAP = 10**7


# -- groups -------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalGroup:
    kind: GroupKind
    n: int
    p: int
    gram: FieldMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind(self.kind))
        check_prime(self.p)
        if self.n < 1:
            raise ValueError(f"rank must be positive, got {self.n}")
        check_rank(self.kind, self.n)
        if self.kind.has_form:
            g = self.gram
            if g is None:
                raise ValueError(f"{self.kind.value} needs a Gram matrix")
            if g.shape != (self.n, self.n) or g.p != self.p:
                raise ShapeMismatch(f"Gram matrix has shape {g.shape}, expected {(self.n, self.n)}")
            if det(g) == 0:
                raise ValueError("Gram matrix is degenerate")
            if self.kind is GroupKind.Sp and not is_alternating(g):
                raise ValueError("Sp needs an alternating Gram matrix")
            if self.kind.orthogonal and not is_symmetric(g):
                raise ValueError("O/SO need a symmetric Gram matrix")
        elif self.gram is not None:
            raise ValueError(f"{self.kind.value} carries no Gram matrix")

    def with_kind(self, kind: GroupKind) -> "ClassicalGroup":
        return ClassicalGroup(kind, self.n, self.p, self.gram)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "n": self.n, "p": self.p}
        if self.gram is not None:
            out["gram"] = self.gram.tolist()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ClassicalGroup":
        p = int(obj["p"])
        gram = FieldMatrix(obj["gram"], p) if obj.get("gram") is not None else None
        return cls(GroupKind(obj["kind"]), int(obj["n"]), p, gram)


def standard_gram(kind: GroupKind, n: int, p: int) -> FieldMatrix | None:
    kind = GroupKind(kind)
    check_rank(kind, n)
    if not kind.has_form:
        return None
    G = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        G[i, n - 1 - i] = 1 if (kind.orthogonal or i < n // 2) else -1
    return FieldMatrix(G, p)


def standard_group(kind: GroupKind, n: int, p: int) -> ClassicalGroup:
    return ClassicalGroup(GroupKind(kind), n, p, standard_gram(kind, n, p))


def lie_constraints(g: ClassicalGroup) -> np.ndarray:
    """Rows ``c`` with ``c . vec(x) = 0`` cutting out Lie(G) (row-major vec)."""
    n, p = g.n, g.p
    if g.kind is GroupKind.GL:
        return np.zeros((0, n * n), dtype=np.int64)
    if g.kind is GroupKind.SL:
        return np.eye(n, dtype=np.int64).reshape(1, -1)
    G = g.gram.array
    # entry (i, j) of x^T G + G x is sum_k x[k,i] G[k,j] + G[i,k] x[k,j]
    A = np.zeros((n * n, n * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            row = A[i * n + j]
            for k in range(n):
                row[k * n + i] += G[k, j]
                row[k * n + j] += G[i, k]
    return A % p


@lru_cache(maxsize=256)
def lie_algebra_basis(g: ClassicalGroup) -> np.ndarray:
    """Basis of Lie(G) as rows of flattened ``n x n`` matrices."""
    c = lie_constraints(g)
    if c.shape[0] == 0:
        return np.eye(g.n * g.n, dtype=np.int64)
    return nullspace_array(c, g.p)


def in_lie_algebra(g: ClassicalGroup, x: FieldMatrix) -> bool:
    if x.shape != (g.n, g.n):
        raise ShapeMismatch(f"expected {g.n}x{g.n}, got {x.shape}")
    if g.kind is GroupKind.GL:
        return True
    if g.kind is GroupKind.SL:
        return x.trace() == 0
    return (x.T @ g.gram + g.gram @ x).is_zero()


def in_group(g: ClassicalGroup, x: FieldMatrix) -> bool:
    if x.shape != (g.n, g.n):
        raise ShapeMismatch(f"expected {g.n}x{g.n}, got {x.shape}")
    d = det(x)
    if d == 0:
        return False
    if g.kind is GroupKind.GL:
        return True
    if g.kind is GroupKind.SL:
        return d == 1
    if x.T @ g.gram @ x != g.gram:
        return False
    return g.kind is not GroupKind.SO or d == 1


# -- triples ------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """A summand of the block decomposition: ``single`` is one ``V(part-1)``,
    ``pair`` is ``V(part-1) + V(part-1)*`` spanning ``2 * part`` coordinates."""

    start: int
    part: int
    kind: str

    @property
    def size(self) -> int:
        return self.part if self.kind == "single" else 2 * self.part


@dataclass(frozen=True, eq=False)
class Sl2Triple:
    e: FieldMatrix
    h: FieldMatrix
    f: FieldMatrix
    label: OrbitLabel | None = None
    blocks: tuple[Block, ...] | None = None
    weights: tuple[int, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        n = self.e.rows
        for x in (self.e, self.h, self.f):
            if x.shape != (n, n):
                raise ShapeMismatch("triple matrices must be square of equal size")
        if not check_relations(self.e, self.h, self.f):
            raise RelationsFail("[h,e]=2e, [h,f]=-2f, [e,f]=h do not all hold")

    @property
    def n(self) -> int:
        return self.e.rows

    @property
    def p(self) -> int:
        return self.e.p

    @property
    def matrices(self) -> tuple[FieldMatrix, FieldMatrix, FieldMatrix]:
        return self.e, self.h, self.f

    def module(self) -> Sl2Module:
        return Sl2Module(self.e, self.h, self.f)

    def swapped(self) -> "Sl2Triple":
        """``(f, -h, e)``, again a triple."""
        w = None if self.weights is None else tuple(-x for x in self.weights)
        return Sl2Triple(self.f, -self.h, self.e, weights=w)

    def conjugated(self, g: FieldMatrix) -> "Sl2Triple":
        gi = inverse(g)
        return Sl2Triple(g @ self.e @ gi, g @ self.h @ gi, g @ self.f @ gi, self.label)

    def same_matrices(self, other: "Sl2Triple") -> bool:
        return self.matrices == other.matrices

    def to_json(self, group: ClassicalGroup) -> dict:
        out = group.to_json()
        out.update(
            e=self.e.tolist(),
            h=self.h.tolist(),
            f=self.f.tolist(),
            label=self.label.to_json() if self.label is not None else None,
        )
        return out


def triple_from_json(obj: dict) -> tuple[Sl2Triple, ClassicalGroup]:
    g = ClassicalGroup.from_json(obj)
    p = g.p
    label = OrbitLabel.from_json(obj["label"]) if obj.get("label") else None
    t = Sl2Triple(FieldMatrix(obj["e"], p), FieldMatrix(obj["h"], p), FieldMatrix(obj["f"], p), label)
    return t, g


# -- block assembly -----------------------------------------------------------


def _chain_form(k: int, p: int) -> np.ndarray:
    """Invariant form on a chain of length ``k``: ``G[i, k-1-i] = (-1)^i``."""
    G = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        G[i, k - 1 - i] = (-1) ** i
    return G % p


def _layout(kind: GroupKind, lam: Partition) -> list[tuple[str, int]]:
    """Split ``lam`` into single and paired blocks according to the form type."""
    kind = GroupKind(kind)
    out: list[tuple[str, int]] = []
    i = 0
    parts = list(lam)
    while i < len(parts):
        k = parts[i]
        paired = (kind.orthogonal and k % 2 == 0) or (kind is GroupKind.Sp and k % 2 == 1)
        if paired:
            if i + 1 >= len(parts) or parts[i + 1] != k:
                raise InvalidLabel(f"{lam} is not a Jordan type for {kind.value}")
            out.append(("pair", k))
            i += 2
        else:
            out.append(("single", k))
            i += 1
    return out


@dataclass
class _Assembly:
    mats: list[np.ndarray]
    gram: np.ndarray | None
    blocks: tuple[Block, ...]
    weights: tuple[int, ...] | None


def _assemble(
    kind: GroupKind,
    lam: Partition,
    p: int,
    make: Callable[[int], tuple[list[np.ndarray], list[int] | None]],
) -> _Assembly:
    """Place ``make(part)`` blocks on the diagonal together with their forms.

    ``make`` returns the block matrices and (optionally) integer h-weights.
    """
    kind = GroupKind(kind)
    layout = _layout(kind, lam) if kind.has_form else [("single", k) for k in lam]
    n = lam.size
    nmats = len(make(1)[0])
    mats = [np.zeros((n, n), dtype=np.int64) for _ in range(nmats)]
    G = np.zeros((n, n), dtype=np.int64) if kind.has_form else None
    eps = 1 if kind.orthogonal else -1
    blocks = []
    weights: list[int] | None = []
    pos = 0
    for bkind, k in layout:
        ms, ws = make(k)
        if ws is None:
            weights = None
        if bkind == "single":
            for M, X in zip(mats, ms):
                M[pos : pos + k, pos : pos + k] = X
            if G is not None:
                G[pos : pos + k, pos : pos + k] = _chain_form(k, p)
            if weights is not None:
                weights.extend(ws)
        else:
            for M, X in zip(mats, ms):
                M[pos : pos + k, pos : pos + k] = X
                M[pos + k : pos + 2 * k, pos + k : pos + 2 * k] = -X.T
            I = np.eye(k, dtype=np.int64)
            G[pos : pos + k, pos + k : pos + 2 * k] = I
            G[pos + k : pos + 2 * k, pos : pos + k] = eps * I
            if weights is not None:
                weights.extend(ws)
                weights.extend(-w for w in ws)
        blocks.append(Block(pos, k, bkind))
        pos += blocks[-1].size
    if G is not None:
        G %= p
        if kind.orthogonal:
            _match_discriminant(G, blocks, n, p)
    return _Assembly([M % p for M in mats], G, tuple(blocks), None if weights is None else tuple(weights))


def _match_discriminant(G: np.ndarray, blocks: Sequence[Block], n: int, p: int) -> None:
    """Rescale one odd block form so ``G`` is congruent to the standard Gram."""
    target = det_array(standard_gram(GroupKind.O, n, p).array, p)
    if is_square_class(det_array(G, p) * pow(target, -1, p), p):
        return
    # hyperbolic blocks carry the split discriminant, so an odd single block exists
    b = next(b for b in blocks if b.kind == "single")
    s = slice(b.start, b.start + b.size)
    G[s, s] = G[s, s] * least_nonsquare(p) % p


def _module_block(p: int) -> Callable[[int], tuple[list[np.ndarray], list[int]]]:
    def make(k: int):
        m = simple_module(k - 1, p)
        return [m.E.array, m.H.array, m.F.array], [k - 1 - 2 * i for i in range(k)]

    return make


def _jordan_block(p: int) -> Callable[[int], tuple[list[np.ndarray], list[int]]]:
    def make(k: int):
        return [np.eye(k, k, 1, dtype=np.int64)], [k - 1 - 2 * i for i in range(k)]

    return make


def _validate_label(g: ClassicalGroup, label: OrbitLabel) -> None:
    if label.partition.size != g.n:
        raise InvalidLabel(f"{label} is not a partition of {g.n}")
    check_label(g.kind, label)
    if not in_variety(label.partition, max_variety(g.kind), g.p):
        raise OutsideMaxVariety(
            f"{label} lies outside the maximal variety {max_variety(g.kind).value} for p={g.p}"
        )


def construct_triple(g: ClassicalGroup, label: OrbitLabel) -> tuple[Sl2Triple, ClassicalGroup]:
    """Canonical triple for ``label`` as the action of a sum of simple modules.

    For Sp/O/SO the returned group carries the assembled block Gram matrix,
    which is congruent to ``g``'s Gram (see :func:`to_standard`).
    """
    if isinstance(label, Partition):
        label = OrbitLabel(label)
    _validate_label(g, label)
    p = g.p
    asm = _assemble(g.kind, label.partition, p, _module_block(p))
    e, h, f = (FieldMatrix(M, p) for M in asm.mats)
    weights = asm.weights
    if label.spin == "II":
        # a reflection swapping one coordinate of the first isotropic pair
        P = _swap_matrix(g.n, asm.blocks[0], p)
        e, h, f = (P @ x @ P.T for x in (e, h, f))
        perm = np.argmax(P.array, axis=1)
        weights = tuple(weights[i] for i in perm)
    gram = FieldMatrix(asm.gram, p) if asm.gram is not None else None
    grp = ClassicalGroup(g.kind, g.n, p, gram)
    return Sl2Triple(e, h, f, label, asm.blocks, weights), grp


def _swap_matrix(n: int, b: Block, p: int) -> FieldMatrix:
    perm = list(range(n))
    perm[b.start], perm[b.start + b.part] = perm[b.start + b.part], perm[b.start]
    return FieldMatrix(np.eye(n, dtype=np.int64)[perm], p)


def spin_swap(g: ClassicalGroup, t: Sl2Triple) -> FieldMatrix:
    """The fixed determinant -1 isometry relating spin I and spin II."""
    if t.blocks is None:
        raise BlockDataMissing("triple carries no block decomposition")
    return _swap_matrix(g.n, t.blocks[0], g.p)


def to_standard(t: Sl2Triple, g: ClassicalGroup) -> tuple[Sl2Triple, ClassicalGroup]:
    """Move a triple onto :func:`standard_group`'s Gram by a congruence."""
    std = standard_group(g.kind, g.n, g.p)
    if not g.kind.has_form:
        return t, std
    P = congruence(g.gram, std.gram)
    Pi = inverse(P)
    e, h, f = (P @ x @ Pi for x in t.matrices)
    return Sl2Triple(e, h, f, t.label), std


def nilpotent_rep(kind: GroupKind, lam: Partition, p: int) -> tuple[FieldMatrix, ClassicalGroup]:
    """A nilpotent of Jordan type ``lam`` in Lie(G) for an assembled Gram.

    Works for any type valid for ``kind``, including parts of size >= p.
    """
    kind = GroupKind(kind)
    lam = Partition(lam)
    check_label(kind, OrbitLabel(lam, "I" if kind is GroupKind.SO and lam and is_very_even(lam) else None))
    asm = _assemble(kind, lam, p, _jordan_block(p))
    gram = FieldMatrix(asm.gram, p) if asm.gram is not None else None
    return FieldMatrix(asm.mats[0], p), ClassicalGroup(kind, lam.size, p, gram)


def construct_triple_unrestricted(g: ClassicalGroup, lam: Partition) -> Sl2Triple:
    """Triple with ``e`` in Jordan form of type ``lam`` (parts may exceed p).

    ``h = diag(k-1, k-3, ..., 1-k)`` per block and ``f`` is the
    lexicographically least solution of ``[h,f] = -2f, [e,f] = h``.
    """
    if g.kind not in (GroupKind.GL, GroupKind.SL):
        raise ValueError("unrestricted construction is defined for GL and SL")
    lam = Partition(lam)
    if lam.size != g.n:
        raise InvalidLabel(f"{lam} is not a partition of {g.n}")
    p, n = g.p, g.n
    asm = _assemble(GroupKind.GL, lam, p, _jordan_block(p))
    e = asm.mats[0]
    h = np.diag(np.array(asm.weights, dtype=np.int64)) % p
    I = np.eye(n, dtype=np.int64)
    ad_e = np.kron(e, I) - np.kron(I, e.T)
    ad_h = np.kron(h, I) - np.kron(I, h.T)
    A = np.vstack([ad_e, ad_h + 2 * np.eye(n * n, dtype=np.int64)]) % p
    b = np.concatenate([h.reshape(-1), np.zeros(n * n, dtype=np.int64)])
    space = solve_affine_array(A, b, p)
    if space is None:
        raise NoSolution(f"no f completes the Jordan form of type {lam} over GF({p})")
    f = space.lex_min().reshape(n, n)
    return Sl2Triple(FieldMatrix(e, p), FieldMatrix(h, p), FieldMatrix(f, p), OrbitLabel(lam), weights=asm.weights)


# -- counterexample witnesses -------------------------------------------------


@dataclass(frozen=True, eq=False)
class CounterexampleWitness:
    """Two triples with the same ``f`` whose modules are not isomorphic.

    Swapping roles, ``(f, -h_1, e_1)`` and ``(f, -h_2, e_2)`` are two
    non-conjugate completions of the single nilpotent ``f``.
    """

    group: ClassicalGroup
    shared_f: FieldMatrix
    triple1: Sl2Triple
    triple2: Sl2Triple
    evidence: tuple[Partition, Partition]

    def completions(self) -> tuple[Sl2Triple, Sl2Triple]:
        return self.triple1.swapped(), self.triple2.swapped()

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "shared_f": self.shared_f.tolist(),
            "triple1": self.triple1.to_json(self.group),
            "triple2": self.triple2.to_json(self.group),
            "jordan_e_1": self.evidence[0].to_json(),
            "jordan_e_2": self.evidence[1].to_json(),
        }


def slp_counterexample(g: ClassicalGroup, p: int | None = None) -> CounterexampleWitness:
    """Triples from ``Z(p-1)`` and ``Z(0)`` sharing ``f``, embedded into ``g``.

    ``triple1`` comes from ``Z(p-1)`` (``e`` of type ``(p, 1, ...)``),
    ``triple2`` from ``Z(0)`` (``e`` of type ``(p-1, 1, 1, ...)``).
    """
    p = g.p if p is None else p
    if p != g.p:
        raise ValueError(f"prime {p} differs from the group's {g.p}")
    n = g.n
    need = 2 * p if g.kind.has_form else p
    if n < need:
        raise RankTooSmall(f"{g.kind.value}_{n} is too small for the witness (needs n >= {need})")
    z_top, z_0 = baby_verma(p - 1, p), baby_verma(0, p)
    if g.kind.has_form:
        eps = 1 if g.kind.orthogonal else -1
        r = n - 2 * p

        def embed(X: np.ndarray) -> np.ndarray:
            M = np.zeros((n, n), dtype=np.int64)
            M[:p, :p] = X
            M[p : 2 * p, p : 2 * p] = -X.T
            return M % p

        G = np.zeros((n, n), dtype=np.int64)
        G[:p, p : 2 * p] = np.eye(p, dtype=np.int64)
        G[p : 2 * p, :p] = eps * np.eye(p, dtype=np.int64)
        if r:
            G[2 * p :, 2 * p :] = standard_gram(g.kind, r, p).array
        grp = ClassicalGroup(g.kind, n, p, FieldMatrix(G % p, p))
    else:

        def embed(X: np.ndarray) -> np.ndarray:
            M = np.zeros((n, n), dtype=np.int64)
            M[:p, :p] = X
            return M % p

        grp = g
    triples = []
    for z in (z_top, z_0):
        t = Sl2Triple(*(FieldMatrix(embed(x.array), p) for x in z.actions))
        if grp.kind.has_form:
            t, std = to_standard(t, grp)
        triples.append(t)
    out_group = standard_group(g.kind, n, p) if g.kind.has_form else g
    t1, t2 = triples
    if t1.f != t2.f:
        raise AssertionError("witness triples must share f")
    return CounterexampleWitness(out_group, t1.f, t1, t2, (jordan_type(t1.e), jordan_type(t2.e)))


# -- conjugacy ----------------------------------------------------------------


def so_centralizing_reflection(g: ClassicalGroup, t: Sl2Triple, label: OrbitLabel | None = None) -> FieldMatrix | None:
    """``-1`` on the first odd single block, ``+1`` elsewhere; ``None`` if there is none."""
    if t.blocks is None:
        raise BlockDataMissing("triple carries no block decomposition")
    label = label or t.label
    lam = label.partition if label is not None else jordan_type(t.e)
    if lam and is_very_even(lam):
        return None
    b = next((b for b in t.blocks if b.kind == "single" and b.part % 2 == 1), None)
    if b is None:
        return None
    d = np.ones(g.n, dtype=np.int64)
    d[b.start : b.start + b.size] = -1
    return FieldMatrix.diag(d, g.p)


def _check_in_algebra(g: ClassicalGroup, t: Sl2Triple) -> None:
    for x in t.matrices:
        if not in_lie_algebra(g, x):
            raise NotInAlgebra(f"triple matrix is not in Lie({g.kind.value}_{g.n})")


@dataclass(frozen=True)
class IsometrySearch:
    """Result of an exhaustive search for an isometric conjugator.

    ``found`` is ``None`` when the search space exceeded the cap.
    """

    found: bool | None
    witness: FieldMatrix | None
    searched: int
    field: str


def find_isometric_conjugator(
    g: ClassicalGroup,
    t1: Sl2Triple,
    t2: Sl2Triple,
    det_value: int | None = None,
    cap: int = SO_SEARCH_CAP,
) -> IsometrySearch:
    """Search ``Hom(M1, M2)`` for ``x`` with ``x^T G x = G`` and ``x t1 x^-1 = t2``.

    Every conjugator is a module map ``M1 -> M2``, so enumerating that space
    is exhaustive. ``det_value`` restricts the determinant (``1`` for SO).
    """
    p, n = g.p, g.n
    fieldname = f"GF({p})"
    hom = hom_space(t1.module(), t2.module())
    D = hom.dim
    total = p**D
    if total > cap:
        return IsometrySearch(None, None, 0, fieldname)
    B = hom.basis_array()
    G = g.gram.array
    powers = p ** np.arange(D - 1, -1, -1, dtype=np.int64)
    searched = 0
    chunk = 8192
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % p
        X = (coeffs @ B % p).reshape(-1, n, n)
        searched += X.shape[0]
        XtG = np.einsum("kji,jl->kil", X, G) % p
        XtGX = np.einsum("kij,kjl->kil", XtG, X) % p
        ok = np.all(XtGX == G[None], axis=(1, 2))
        for k in np.flatnonzero(ok):
            d = det_array(X[k], p)
            if d == 0:
                continue
            if det_value is None or d == det_value % p:
                return IsometrySearch(True, FieldMatrix(X[k], p), searched, fieldname)
    return IsometrySearch(False, None, searched, fieldname)


def so_refinement(
    g: ClassicalGroup,
    t1: Sl2Triple,
    t2: Sl2Triple,
    witness: FieldMatrix | None = None,
    cap: int = SO_SEARCH_CAP,
) -> bool | None:
    """Decide SO-conjugacy of two O-conjugate triples; ``None`` means indeterminate."""
    if t1.same_matrices(t2):
        return True
    lam = jordan_type(t1.e)
    if not (lam and is_very_even(lam)):
        # an odd part gives a determinant -1 element centralizing the triple
        return True
    if witness is not None and g.gram is not None:
        if witness.T @ g.gram @ witness == g.gram and det(witness) == 1:
            return True
    return find_isometric_conjugator(g, t1, t2, det_value=1, cap=cap).found


def triples_conjugate(g: ClassicalGroup, t1: Sl2Triple, t2: Sl2Triple, seed: int = 0) -> bool:
    """Are the triples conjugate under ``G``? Raises BudgetExceeded if undecidable."""
    if t1.n != g.n or t2.n != g.n:
        raise ShapeMismatch("triples do not live in the group's matrix algebra")
    if g.kind.has_form or g.kind is GroupKind.SL:
        _check_in_algebra(g, t1)
        _check_in_algebra(g, t2)
    if t1.same_matrices(t2):
        return True
    iso = is_isomorphic(t1.module(), t2.module(), seed=seed)
    if not iso:
        return False
    if g.kind is GroupKind.SO:
        res = so_refinement(g, t1, t2, iso.witness)
        if res is None:
            raise BudgetExceeded("SO conjugator search exceeds its cap")
        return res
    return True


# -- exponential identity -----------------------------------------------------


def _is_diagonal(x: FieldMatrix) -> bool:
    a = x.array
    return not (a - np.diag(np.diagonal(a))).any()


def integer_weights(t: Sl2Triple) -> tuple[int, ...]:
    """Integer weights ``w`` with ``w_a - w_b = 2 (mod p-1)`` on every entry ``e[a,b] != 0``."""
    if t.weights is not None:
        return t.weights
    if not _is_diagonal(t.h):
        raise HNotDiagonal("h is not diagonal")
    n, p = t.n, t.p
    E = t.e.array
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b in np.argwhere(E):
        adj[b].append((a, 2))
        adj[a].append((b, -2))
    w: list[int | None] = [None] * n
    for root in range(n):
        if w[root] is not None:
            continue
        w[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, step in adj[u]:
                if w[v] is None:
                    w[v] = w[u] + step
                    queue.append(v)
                elif (w[v] - w[u] - step) % (p - 1):
                    raise HNotDiagonal("no torus element scales e by t^2")
    return tuple(w)


def torus_element(weights: Sequence[int], tt: int, p: int) -> FieldMatrix:
    return FieldMatrix.diag([pow(tt, w % (p - 1), p) for w in weights], p)


def orbit_exp_sweep(t: Sl2Triple, s: int, tt: int) -> tuple[FieldMatrix, FieldMatrix]:
    """``claimed = tt^2 (e - s h - s^2 f)`` and ``witnessed = Ad(exp(s f)) Ad(tau(tt)) e``."""
    p = t.p
    if tt % p == 0:
        raise ValueError("tt must be nonzero")
    if not _is_diagonal(t.h):
        raise HNotDiagonal("h is not diagonal")
    if not (t.f**p).is_zero():
        raise FPowerNotZero("f**p != 0")
    claimed = (t.e - t.h * s - t.f * (s * s)) * (tt * tt)
    tau = torus_element(integer_weights(t), tt, p)
    witnessed = conjugate(nilpotent_exp(t.f, s), conjugate(tau, t.e))
    return claimed, witnessed


def exp_sweep_holds(t: Sl2Triple) -> bool:
    p = t.p
    return all(
        (lambda cw: cw[0] == cw[1])(orbit_exp_sweep(t, s, tt)) for s in range(p) for tt in range(1, p)
    )


def triple_self_checks(g: ClassicalGroup, t: Sl2Triple, label: OrbitLabel | None = None) -> dict[str, bool]:
    """Checks reported alongside constructed triples."""
    label = label or t.label
    je, jf = jordan_type(t.e), jordan_type(t.f)
    checks = {
        "relations": check_relations(*t.matrices),
        "jordan_e": label is None or je == label.partition,
        "jordan_f": jf == je,
        "membership": all(in_lie_algebra(g, x) for x in t.matrices),
    }
    if g.gram is not None:
        checks["gram_nondegenerate"] = det(g.gram) != 0
    return checks


def random_invertible(n: int, p: int, rng: np.random.Generator) -> FieldMatrix:
    while True:
        a = rng.integers(0, p, size=(n, n))
        if rank_array(a, p) == n:
            return FieldMatrix(a, p)
