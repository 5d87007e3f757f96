"""Brute-force verification of the sl2-property over GF(p).

All completions ``(e, h, f)`` of a fixed nilpotent ``e`` are enumerated in two
affine stages. Every ``h`` is of the form ``[e, f]``, so the first stage walks
the image ``{[e, f] : f in Lie(G), [[e, f], e] = 2e}``; the second stage
solves ``[e, f] = h, [h, f] = -2f`` for each such ``h``.
"""

from __future__ import annotations

import enum
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .errors import BudgetExceeded, NotInAlgebra, NotNilpotent, OutsideMaxVariety, RankTooSmall
from .gfp import AffineSpace, FieldMatrix, is_nilpotent, jordan_type, rank_array, row_space_basis, solve_affine_array
from .modules import is_isomorphic
from .partitions import (
    GroupKind,
    OrbitLabel,
    Partition,
    VarietyKind,
    dominance_leq,
    enumerate_orbits,
    in_variety,
    is_very_even,
    max_variety,
    partitions_of,
    valid_for,
)
from .triples import (
    ClassicalGroup,
    CounterexampleWitness,
    Sl2Triple,
    construct_triple,
    in_lie_algebra,
    lie_algebra_basis,
    nilpotent_rep,
    slp_counterexample,
    triples_conjugate,
)

DEFAULT_BUDGET = 10**8
MAX_OFFENDERS = 3


class Budget:
    """Thread-safe counter of enumerated lattice points."""

    def __init__(self, limit: int):
        if limit <= 0:
            raise ValueError("budget must be positive")
        self.limit = int(limit)
        self.spent = 0
        self._lock = threading.Lock()

    def spend(self, k: int = 1) -> None:
        with self._lock:
            self.spent += k
            if self.spent > self.limit:
                raise BudgetExceeded(f"point budget {self.limit} exhausted", spent=self.spent)

    def reserve(self, k: int) -> None:
        """Fail early if ``k`` more points cannot fit."""
        with self._lock:
            if self.spent + k > self.limit:
                raise BudgetExceeded(
                    f"{k} points needed but only {self.limit - self.spent} remain", spent=self.spent
                )


def _ad(x: np.ndarray) -> np.ndarray:
    """Matrix of ``y -> [x, y]`` on row-major ``vec(y)``."""
    n = x.shape[0]
    I = np.eye(n, dtype=np.int64)
    return np.kron(x, I) - np.kron(I, x.T)


def _reorder(space: AffineSpace, rng: np.random.Generator) -> AffineSpace:
    """Same point set, different enumeration order."""
    p, k = space.p, space.dim
    if k == 0:
        return space
    while True:
        M = rng.integers(0, p, size=(k, k))
        if rank_array(M, p) == k:
            break
    shift = rng.integers(0, p, size=k)
    return AffineSpace((space.particular + shift @ space.kernel) % p, M @ space.kernel % p, p)


@dataclass(frozen=True)
class CompletionSearchSpace:
    group: ClassicalGroup
    e: FieldMatrix
    lie_basis: np.ndarray
    h_space: AffineSpace | None  # None: no completion exists

    @classmethod
    def build(cls, g: ClassicalGroup, e: FieldMatrix) -> "CompletionSearchSpace":
        if e.shape != (g.n, g.n):
            raise NotInAlgebra(f"e must be {g.n}x{g.n}")
        if not is_nilpotent(e):
            raise NotNilpotent("e is not nilpotent")
        if not in_lie_algebra(g, e):
            raise NotInAlgebra("e is not in the Lie algebra")
        p = g.p
        L = lie_algebra_basis(g)
        Ae = _ad(e.array) % p
        img = Ae @ L.T % p  # columns: [e, basis element]
        # [[e, f], e] = -ad_e [e, f] = 2e
        stage1 = solve_affine_array(-Ae @ img % p, 2 * e.array.reshape(-1), p)
        if stage1 is None:
            return cls(g, e, L, None)
        h0 = img @ stage1.particular % p
        dirs = row_space_basis((img @ stage1.kernel.T % p).T, p) if stage1.dim else np.zeros((0, g.n * g.n), dtype=np.int64)
        return cls(g, e, L, AffineSpace(h0, dirs, p))

    def f_space(self, h: np.ndarray) -> AffineSpace | None:
        """Coordinates (in the Lie basis) of all ``f`` completing ``(e, h)``."""
        p, n = self.group.p, self.group.n
        L = self.lie_basis
        Ae = _ad(self.e.array)
        Ah = _ad(h.reshape(n, n)) + 2 * np.eye(n * n, dtype=np.int64)
        A = np.vstack([Ae @ L.T, Ah @ L.T]) % p
        b = np.concatenate([h.reshape(-1), np.zeros(n * n, dtype=np.int64)])
        return solve_affine_array(A, b, p)


def iter_completions(
    g: ClassicalGroup,
    e: FieldMatrix,
    budget: Budget,
    order_seed: int | None = None,
) -> Iterator[Sl2Triple]:
    """Stream of all triples ``(e, h, f)`` with ``h, f`` in Lie(G), each once."""
    space = CompletionSearchSpace.build(g, e)
    if space.h_space is None:
        return
    p, n = g.p, g.n
    rng = np.random.default_rng(order_seed) if order_seed is not None else None
    hs = space.h_space if rng is None else _reorder(space.h_space, rng)
    budget.reserve(hs.size)
    for h in hs.points():
        budget.spend()
        fs = space.f_space(h)
        if fs is None:
            continue
        if rng is not None:
            fs = _reorder(fs, rng)
        budget.reserve(fs.size)
        H = FieldMatrix(h.reshape(n, n), p)
        for c in fs.points():
            budget.spend()
            f = FieldMatrix((c @ space.lie_basis % p).reshape(n, n), p)
            yield Sl2Triple(e, H, f)


def enumerate_completions(
    g: ClassicalGroup,
    e: FieldMatrix,
    budget: int = DEFAULT_BUDGET,
    order_seed: int | None = None,
) -> list[Sl2Triple]:
    """All completions of ``e``; raises :class:`BudgetExceeded` with the partial list."""
    out: list[Sl2Triple] = []
    b = Budget(budget)
    try:
        for t in iter_completions(g, e, b, order_seed):
            out.append(t)
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), partial=out, spent=b.spent) from None
    return out


# -- reports ------------------------------------------------------------------


class Verdict(str, enum.Enum):
    Holds = "Holds"
    FailsWithWitness = "FailsWithWitness"
    BudgetExceeded = "BudgetExceeded"


@dataclass
class OrbitResult:
    label: OrbitLabel
    surjectivity_witness: dict | None = None
    completions_found: int = 0
    completions_total: int = 0
    iso_classes: int = 0
    f_type_mismatches: int = 0
    offenders: list[dict] = field(default_factory=list)
    ok: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {
            "label": self.label.to_json(),
            "surjectivityWitness": self.surjectivity_witness,
            "completionsFound": self.completions_found,
            "completionsTotal": self.completions_total,
            "isoClasses": self.iso_classes,
            "fTypeMismatches": self.f_type_mismatches,
            "offenders": self.offenders,
            "ok": self.ok,
            "note": self.note,
        }

    def progress_line(self) -> str:
        return (
            f"{self.label}: completions={self.completions_found}/{self.completions_total} "
            f"classes={self.iso_classes} ok={self.ok}"
        )


@dataclass
class VerificationReport:
    group: ClassicalGroup
    variety: VarietyKind | None
    budget: int
    spent: int = 0
    per_orbit: list[OrbitResult] = field(default_factory=list)
    verdict: Verdict = Verdict.Holds
    witnesses: list[CounterexampleWitness] = field(default_factory=list)
    labels_distinct: bool = True

    def to_json(self) -> dict:
        return {
            "group": {"kind": self.group.kind.value, "n": self.group.n, "p": self.group.p},
            "variety": self.variety.value if self.variety is not None else None,
            "budget": self.budget,
            "spent": self.spent,
            "perOrbit": [r.to_json() for r in self.per_orbit],
            "verdict": self.verdict.value,
            "witnesses": [w.to_json() for w in self.witnesses],
            "labelsDistinct": self.labels_distinct,
        }


def nilpotent_type(x: FieldMatrix) -> Partition | None:
    """Jordan type of ``x``, or ``None`` when ``x`` is not nilpotent."""
    return jordan_type(x) if is_nilpotent(x) else None


def _in_v(x: FieldMatrix, v: VarietyKind, p: int) -> bool:
    lam = nilpotent_type(x)
    return lam is not None and in_variety(lam, v, p)


def _canonical(g: ClassicalGroup, label: OrbitLabel, v: VarietyKind, budget: Budget) -> tuple[Sl2Triple | None, ClassicalGroup]:
    try:
        return construct_triple(g, label)
    except OutsideMaxVariety:
        pass
    # outside the maximal variety: take the first completion with f in v
    e, grp = nilpotent_rep(g.kind, label.partition, g.p)
    grp = grp.with_kind(g.kind)
    for t in iter_completions(grp, e, budget):
        if _in_v(t.f, v, g.p):
            return Sl2Triple(t.e, t.h, t.f, label), grp
    return None, grp


def _verify_orbit(g: ClassicalGroup, label: OrbitLabel, v: VarietyKind, budget: Budget, seed: int) -> tuple[OrbitResult, Sl2Triple | None, ClassicalGroup]:
    res = OrbitResult(label)
    canon, grp = _canonical(g, label, v, budget)
    if canon is None:
        res.note = "no completion with f in the variety"
        return res, None, grp
    je, jf = jordan_type(canon.e), nilpotent_type(canon.f)
    res.surjectivity_witness = canon.to_json(grp)
    surj = in_variety(je, v, g.p) and jf is not None and in_variety(jf, v, g.p)
    reps: list[Sl2Triple] = [canon]
    in_max = in_variety(je, max_variety(g.kind), g.p)
    for t in iter_completions(grp, canon.e, budget):
        res.completions_total += 1
        ft = nilpotent_type(t.f)
        if ft is None or not in_variety(ft, v, g.p):
            continue
        res.completions_found += 1
        if in_max and ft != je:
            res.f_type_mismatches += 1
        if triples_conjugate(grp, canon, t, seed=seed):
            continue
        if len(res.offenders) < MAX_OFFENDERS:
            res.offenders.append(t.to_json(grp))
        if not any(triples_conjugate(grp, r, t, seed=seed) for r in reps[1:]):
            reps.append(t)
    res.iso_classes = len(reps)
    res.ok = surj and res.completions_found >= 1 and res.iso_classes == 1
    return res, canon, grp


def verify_sl2_property(
    g: ClassicalGroup,
    v: VarietyKind | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> VerificationReport:
    """Check that ``(e, h, f) -> e`` is a bijection on orbits of the variety ``v``."""
    v = max_variety(g.kind) if v is None else VarietyKind(v)
    labels = enumerate_orbits(g.kind, g.n, g.p, v)
    b = Budget(budget)
    report = VerificationReport(g, v, budget)

    def run(label: OrbitLabel):
        out = _verify_orbit(g, label, v, b, seed)
        if progress is not None:
            progress(out[0].progress_line())
        return out

    try:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                results = list(ex.map(run, labels))
        else:
            results = [run(lab) for lab in labels]
    except BudgetExceeded:
        report.spent = b.spent
        report.verdict = Verdict.BudgetExceeded
        return report
    report.spent = b.spent
    report.per_orbit = [r for r, _, _ in results]
    report.labels_distinct = _labels_distinct(g, [(lab, t) for lab, (_, t, _) in zip(labels, results)], seed)
    ok = all(r.ok for r in report.per_orbit) and report.labels_distinct
    report.verdict = Verdict.Holds if ok else Verdict.FailsWithWitness
    return report


def _labels_distinct(g: ClassicalGroup, items: list[tuple[OrbitLabel, Sl2Triple | None]], seed: int) -> bool:
    """Canonical triples of different partitions have non-isomorphic modules."""
    for i, (a, ta) in enumerate(items):
        for b, tb in items[i + 1 :]:
            if ta is None or tb is None:
                continue
            same_partition = a.partition == b.partition
            if bool(is_isomorphic(ta.module(), tb.module(), seed=seed)) != same_partition:
                return False
    return True


# -- maximality ---------------------------------------------------------------


def boundary_partition(kind: GroupKind, n: int, p: int) -> Partition | None:
    """Minimal type just outside ``N^p``: ``(p+1, 1, ...)``, or ``(p+2, 1, ...)`` for O/SO."""
    top = p + 2 if GroupKind(kind).orthogonal else p + 1
    if n < top:
        return None
    lam = Partition((top,) + (1,) * (n - top))
    return lam if valid_for(kind, lam) else None


def slp_partition(kind: GroupKind, n: int, p: int) -> Partition | None:
    if GroupKind(kind).has_form:
        return Partition((p, p) + (1,) * (n - 2 * p)) if n >= 2 * p else None
    return Partition((p,) + (1,) * (n - p)) if n >= p else None


def boundary_witness(g: ClassicalGroup, lam: Partition, budget: Budget, seed: int = 0) -> CounterexampleWitness | None:
    """Non-injectivity at the ``N^p`` boundary.

    Take ``e`` of type ``lam`` and a completion whose ``f`` satisfies
    ``f^p = 0``. Then ``(f, -h, e)`` is one completion of ``f``; search the
    completions of ``f`` for one with a non-isomorphic module.
    """
    p = g.p
    e, grp = nilpotent_rep(g.kind, lam, p)
    grp = grp.with_kind(g.kind)
    base = None
    for t in iter_completions(grp, e, budget):
        if (t.f**p).is_zero():
            base = t
            break
    if base is None:
        return None
    first = base.swapped()
    for t in iter_completions(grp, base.f, budget):
        ty = nilpotent_type(t.f)
        if ty is None or ty == jordan_type(first.f):
            continue
        if not is_isomorphic(first.module(), t.module(), seed=seed):
            # present both in the (e, h, shared f) orientation
            t1, t2 = first.swapped(), t.swapped()
            return CounterexampleWitness(grp, base.f, t1, t2, (jordan_type(t1.e), jordan_type(t2.e)))
    return None


def verify_maximality(
    g: ClassicalGroup,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> VerificationReport:
    """Exhibit failures of the sl2-property just outside the maximal variety."""
    p, n = g.p, g.n
    lam_slp = slp_partition(g.kind, n, p)
    lam_bd = boundary_partition(g.kind, n, p)
    if lam_slp is None and lam_bd is None:
        raise RankTooSmall(f"{g.kind.value}_{n} has no boundary orbit for p={p}")
    b = Budget(budget)
    report = VerificationReport(g, None, budget)

    def slp_job():
        w = slp_counterexample(g)
        return lam_slp, w

    def boundary_job():
        return lam_bd, boundary_witness(g, lam_bd, b, seed)

    jobs = ([slp_job] if lam_slp is not None else []) + ([boundary_job] if lam_bd is not None else [])
    try:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                outs = list(ex.map(lambda j: j(), jobs))
        else:
            outs = [j() for j in jobs]
    except BudgetExceeded:
        report.spent = b.spent
        report.verdict = Verdict.BudgetExceeded
        return report
    all_found = True
    for lam, w in outs:
        res = OrbitResult(OrbitLabel(lam, "I" if g.kind is GroupKind.SO and _very_even(lam) else None))
        if w is None:
            all_found = False
            res.note = "no witness found"
        else:
            c1, c2 = w.completions()
            non_iso = not is_isomorphic(c1.module(), c2.module(), seed=seed)
            res.completions_found = 2
            res.iso_classes = 2 if non_iso else 1
            res.offenders = [w.to_json()]
            res.ok = non_iso
            all_found = all_found and non_iso
            report.witnesses.append(w)
        if progress is not None:
            progress(res.progress_line())
        report.per_orbit.append(res)
    report.spent = b.spent
    report.verdict = Verdict.FailsWithWitness if all_found else Verdict.Holds
    return report


def _very_even(lam: Partition) -> bool:
    return bool(lam) and is_very_even(lam)


# -- closure order ------------------------------------------------------------


def rank_profile(kind: GroupKind, lam: Partition, p: int) -> tuple[int, ...]:
    """Ranks of ``x^i`` for ``i = 1..n`` on a Jordan-form representative."""
    x, _ = nilpotent_rep(kind, lam, p)
    out = []
    y = x
    for _ in range(lam.size):
        out.append(rank_array(y.array, p))
        y = y @ x
    return tuple(out)


def verify_closure_consistency(kind: GroupKind, n: int, p: int) -> bool:
    """Dominance order agrees with the rank criterion on all valid pairs."""
    kind = GroupKind(kind)
    if kind is GroupKind.Sp and n % 2:
        return True
    lams = [lam for lam in partitions_of(n) if valid_for(kind, lam)]
    prof = {lam: rank_profile(kind, lam, p) for lam in lams}
    for mu in lams:
        for lam in lams:
            by_rank = all(a <= b for a, b in zip(prof[mu], prof[lam]))
            if by_rank != dominance_leq(mu, lam):
                return False
    return True
