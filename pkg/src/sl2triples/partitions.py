"""Partition combinatorics for nilpotent orbits of classical groups.

Orbits of GL/SL/Sp/O on the nilpotent cone are labelled by Jordan types;
for SO a very even type carries an extra formal spin tag ``I``/``II``.
Nothing here touches matrices.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InvalidLabel, OddRankForSp, SizeMismatch


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,1,1"`` (parts in any order); ``""`` is the empty partition."""
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(sorted((int(t) for t in text.split(",") if t.strip()), reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """1-based part access with the convention that missing parts are 0."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def multiplicity(self, i: int) -> int:
        return multiplicity(self, i)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition(())
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def rank_of_power(self, i: int) -> int:
        """Rank of x**i for nilpotent x of this Jordan type."""
        return sum(max(x - i, 0) for x in self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def to_json(self) -> list[int]:
        return list(self)


class GroupKind(str, enum.Enum):
    GL = "GL"
    SL = "SL"
    Sp = "Sp"
    O = "O"  # noqa: E741
    SO = "SO"

    @classmethod
    def parse(cls, text: str) -> "GroupKind":
        for k in cls:
            if k.value.lower() == text.strip().lower():
                return k
        raise ValueError(f"unknown group kind {text!r}")

    @property
    def has_form(self) -> bool:
        return self in (GroupKind.Sp, GroupKind.O, GroupKind.SO)

    @property
    def orthogonal(self) -> bool:
        return self in (GroupKind.O, GroupKind.SO)


class VarietyKind(str, enum.Enum):
    NilAll = "NilAll"
    NpMinus1 = "NpMinus1"
    OneNp = "OneNp"
    Np = "Np"

    @classmethod
    def parse(cls, text: str) -> "VarietyKind":
        aliases = {"n": "NilAll", "nil": "NilAll", "np-1": "NpMinus1", "1np": "OneNp", "np": "Np"}
        t = aliases.get(text.strip().lower(), text.strip())
        for v in cls:
            if v.value.lower() == t.lower():
                return v
        raise ValueError(f"unknown variety {text!r}")


@dataclass(frozen=True)
class OrbitLabel:
    partition: Partition
    spin: str | None = None

    def __post_init__(self):
        if not isinstance(self.partition, Partition):
            object.__setattr__(self, "partition", Partition(self.partition))
        if self.spin not in (None, "I", "II"):
            raise InvalidLabel(f"spin must be I, II or None, got {self.spin!r}")

    def __str__(self) -> str:
        s = ",".join(map(str, self.partition)) or "0"
        return f"{s}_{self.spin}" if self.spin else s

    def to_json(self) -> dict:
        return {"partition": self.partition.to_json(), "spin": self.spin}

    @classmethod
    def from_json(cls, obj: dict) -> "OrbitLabel":
        return cls(Partition(obj["partition"]), obj.get("spin"))


def multiplicity(lam: Iterable[int], i: int) -> int:
    return sum(1 for x in lam if x == i)


def join(lam: Partition, mu: Partition) -> Partition:
    """Multiplicity-wise sum ``lam | mu``."""
    return Partition(sorted(tuple(lam) + tuple(mu), reverse=True))


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """Prefix-sum comparison ``mu <= lam`` (missing parts count as 0)."""
    a = b = 0
    for r in range(1, max(len(mu), len(lam)) + 1):
        a += mu.part(r)
        b += lam.part(r)
        if a > b:
            return False
    return True


def valid_for(kind: GroupKind, lam: Partition) -> bool:
    kind = GroupKind(kind)
    counts = Counter(lam)
    if kind is GroupKind.Sp:
        return all(m % 2 == 0 for i, m in counts.items() if i % 2 == 1)
    if kind.orthogonal:
        return all(m % 2 == 0 for i, m in counts.items() if i % 2 == 0)
    return True


def is_very_even(lam: Partition) -> bool:
    counts = Counter(lam)
    return all(i % 2 == 0 and m % 2 == 0 for i, m in counts.items())


def in_variety(lam: Partition, v: VarietyKind, p: int) -> bool:
    v = VarietyKind(v)
    first, second = lam.part(1), lam.part(2)
    if v is VarietyKind.NilAll:
        return True
    if v is VarietyKind.NpMinus1:
        return first <= p - 1
    if v is VarietyKind.OneNp:
        return first <= p and second <= p - 1
    return first <= p


def max_variety(kind: GroupKind) -> VarietyKind:
    return VarietyKind.OneNp if GroupKind(kind).orthogonal else VarietyKind.NpMinus1


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""

    def gen(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(Partition(t) for t in gen(n, n))


def check_rank(kind: GroupKind, n: int) -> None:
    if GroupKind(kind) is GroupKind.Sp and n % 2:
        raise OddRankForSp(f"Sp needs even n, got {n}")


def labels_for(kind: GroupKind, lam: Partition) -> list[OrbitLabel]:
    if GroupKind(kind) is GroupKind.SO and lam and is_very_even(lam):
        return [OrbitLabel(lam, "I"), OrbitLabel(lam, "II")]
    return [OrbitLabel(lam)]


def enumerate_orbits(kind: GroupKind, n: int, p: int, v: VarietyKind = VarietyKind.NilAll) -> list[OrbitLabel]:
    kind = GroupKind(kind)
    check_rank(kind, n)
    out: list[OrbitLabel] = []
    for lam in partitions_of(n):
        if valid_for(kind, lam) and in_variety(lam, v, p):
            out.extend(labels_for(kind, lam))
    return out


def check_label(kind: GroupKind, label: OrbitLabel) -> None:
    kind = GroupKind(kind)
    if not valid_for(kind, label.partition):
        raise InvalidLabel(f"{label.partition} is not a Jordan type for {kind.value}")
    needs_spin = kind is GroupKind.SO and bool(label.partition) and is_very_even(label.partition)
    if needs_spin != (label.spin is not None):
        raise InvalidLabel(f"spin tag {'required' if needs_spin else 'not allowed'} for {label} in {kind.value}")


def closure_leq(a: OrbitLabel, b: OrbitLabel, kind: GroupKind) -> bool:
    """Is the orbit ``a`` contained in the closure of the orbit ``b``?"""
    if a.partition.size != b.partition.size:
        raise SizeMismatch(f"{a} and {b} are partitions of different sizes")
    check_label(kind, a)
    check_label(kind, b)
    if a == b:
        return True
    if a.partition == b.partition:
        # the two SO-orbits of a very even type
        return False
    return dominance_leq(a.partition, b.partition)


def hasse_diagram(kind: GroupKind, n: int, p: int, v: VarietyKind = VarietyKind.NilAll) -> list[tuple[OrbitLabel, OrbitLabel]]:
    """Covering pairs ``(lower, upper)`` of the closure order."""
    labels = enumerate_orbits(kind, n, p, v)
    below = {
        (a, b)
        for a in labels
        for b in labels
        if a != b and closure_leq(a, b, kind)
    }
    edges = []
    for a, b in below:
        if not any((a, c) in below and (c, b) in below for c in labels):
            edges.append((a, b))
    order = {lab: i for i, lab in enumerate(labels)}
    edges.sort(key=lambda e: (order[e[1]], order[e[0]]), reverse=True)
    return edges


def hasse_dot(kind: GroupKind, n: int, p: int, v: VarietyKind = VarietyKind.NilAll) -> str:
    labels = enumerate_orbits(kind, n, p, v)
    lines = [f'digraph "{GroupKind(kind).value}_{n}_p{p}" {{', "  rankdir=BT;"]
    for lab in labels:
        lines.append(f'  "{lab}";')
    for lo, hi in hasse_diagram(kind, n, p, v):
        lines.append(f'  "{lo}" -> "{hi}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
