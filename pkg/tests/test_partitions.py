import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sl2triples.errors import InvalidLabel, OddRankForSp, SizeMismatch
from sl2triples.partitions import (
    GroupKind,
    OrbitLabel,
    Partition,
    VarietyKind,
    closure_leq,
    dominance_leq,
    enumerate_orbits,
    hasse_diagram,
    hasse_dot,
    in_variety,
    is_very_even,
    join,
    max_variety,
    multiplicity,
    partitions_of,
    valid_for,
)

P = Partition
L = OrbitLabel


def test_partition_validation_and_parse():
    assert P.parse("1,3,1") == P((3, 1, 1))
    assert P.parse("") == P(())
    assert P((3, 1)).part(3) == 0
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, 0))


def test_multiplicity_examples():
    assert multiplicity(P((3, 3, 2, 1, 1, 1)), 1) == 3
    assert multiplicity(P((5,)), 2) == 0
    assert multiplicity(P((2, 2)), 2) == 2


def test_join_examples():
    assert join(P((3, 1)), P((2, 1))) == P((3, 2, 1, 1))
    assert join(P((3, 1)), P(())) == P((3, 1))
    assert join(P((2, 2)), P((2,))) == P((2, 2, 2))


def test_dominance_examples():
    assert dominance_leq(P((2, 2)), P((3, 1)))
    assert not dominance_leq(P((3, 1)), P((2, 2)))
    for p in (3, 5, 7):
        for extra in range(3):
            assert dominance_leq(P((p - 1,) + (1,) * (extra + 1)), P((p,) + (1,) * extra))


def test_valid_for_examples():
    assert valid_for(GroupKind.Sp, P((3, 3, 2)))
    assert not valid_for(GroupKind.Sp, P((3, 2, 1)))
    assert valid_for(GroupKind.O, P((2, 2, 1)))
    assert not valid_for(GroupKind.O, P((2, 1)))
    assert all(valid_for(GroupKind.GL, lam) for lam in partitions_of(6))


def test_very_even_examples():
    assert is_very_even(P((2, 2)))
    assert not is_very_even(P((4, 2, 2)))
    assert not is_very_even(P((3, 3)))


def test_in_variety_examples():
    for p in (3, 5, 7):
        assert in_variety(P((p - 1, p - 1)), VarietyKind.NpMinus1, p)
        assert not in_variety(P((p, p)), VarietyKind.OneNp, p)
        assert in_variety(P((p, 1)), VarietyKind.OneNp, p)
        assert in_variety(P((p, p)), VarietyKind.Np, p)
        assert in_variety(P((p + 5,)), VarietyKind.NilAll, p)


def test_max_variety():
    assert max_variety(GroupKind.GL) is VarietyKind.NpMinus1
    assert max_variety(GroupKind.SL) is VarietyKind.NpMinus1
    assert max_variety(GroupKind.Sp) is VarietyKind.NpMinus1
    assert max_variety(GroupKind.O) is VarietyKind.OneNp
    assert max_variety(GroupKind.SO) is VarietyKind.OneNp


def test_enumerate_orbits_examples():
    assert enumerate_orbits(GroupKind.GL, 3, 3, VarietyKind.NpMinus1) == [L(P((2, 1))), L(P((1, 1, 1)))]
    assert enumerate_orbits(GroupKind.SO, 4, 3, VarietyKind.OneNp) == [
        L(P((3, 1))),
        L(P((2, 2)), "I"),
        L(P((2, 2)), "II"),
        L(P((1, 1, 1, 1))),
    ]
    assert enumerate_orbits(GroupKind.Sp, 2, 5, VarietyKind.NpMinus1) == [L(P((2,))), L(P((1, 1)))]
    with pytest.raises(OddRankForSp):
        enumerate_orbits(GroupKind.Sp, 3, 3)


def _brute_partitions(n):
    # oracle: multisets of positive parts summing to n
    out = set()
    for k in range(1, n + 1):
        for combo in itertools.combinations_with_replacement(range(1, n + 1), k):
            if sum(combo) == n:
                out.add(tuple(sorted(combo, reverse=True)))
    return out


@pytest.mark.parametrize("n", range(1, 9))
def test_partitions_of_complete_and_ordered(n):
    ps = partitions_of(n)
    assert {tuple(x) for x in ps} == _brute_partitions(n)
    assert list(ps) == sorted(ps, reverse=True)


@pytest.mark.parametrize("n", range(1, 11))
def test_so_label_count(n):
    valid = [lam for lam in partitions_of(n) if valid_for(GroupKind.SO, lam)]
    very_even = [lam for lam in valid if is_very_even(lam)]
    assert len(enumerate_orbits(GroupKind.SO, n, 3)) == len(valid) + len(very_even)


def test_closure_examples():
    assert closure_leq(L(P((2, 2, 1))), L(P((3, 1, 1))), GroupKind.O)
    a, b = L(P((2, 2)), "I"), L(P((2, 2)), "II")
    assert not closure_leq(a, b, GroupKind.SO) and not closure_leq(b, a, GroupKind.SO)
    for lab in enumerate_orbits(GroupKind.SO, 8, 3):
        assert closure_leq(lab, lab, GroupKind.SO)
    with pytest.raises(SizeMismatch):
        closure_leq(L(P((2,))), L(P((2, 1))), GroupKind.GL)
    with pytest.raises(InvalidLabel):
        closure_leq(L(P((2, 1))), L(P((3,))), GroupKind.O)
    with pytest.raises(InvalidLabel):
        closure_leq(L(P((2, 2))), L(P((3, 1))), GroupKind.SO)


def test_hasse_examples():
    # listed bottom-up
    assert hasse_diagram(GroupKind.GL, 3, 5) == [
        (L(P((1, 1, 1))), L(P((2, 1)))),
        (L(P((2, 1))), L(P((3,)))),
    ]
    so = set(hasse_diagram(GroupKind.SO, 4, 5))
    one = L(P((1, 1, 1, 1)))
    s1, s2, top = L(P((2, 2)), "I"), L(P((2, 2)), "II"), L(P((3, 1)))
    assert so == {(one, s1), (one, s2), (s1, top), (s2, top)}
    assert hasse_diagram(GroupKind.GL, 2, 3, VarietyKind.NpMinus1) == [(L(P((1, 1))), L(P((2,))))]
    dot = hasse_dot(GroupKind.GL, 3, 5)
    assert dot.count("->") == 2 and '"1,1,1" -> "2,1"' in dot


@pytest.mark.parametrize("kind", list(GroupKind))
@pytest.mark.parametrize("p", [3, 5])
def test_max_variety_downward_closed(kind, p):
    for n in range(2, 9, 2 if kind is GroupKind.Sp else 1):
        inside = set(enumerate_orbits(kind, n, p, max_variety(kind)))
        for a in enumerate_orbits(kind, n, p):
            for b in inside:
                if closure_leq(a, b, kind):
                    assert a in inside


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.sampled_from(partitions_of(n)), st.sampled_from(partitions_of(n)))))
def test_dominance_is_rank_inequality(pair):
    mu, lam = pair
    by_rank = all(mu.rank_of_power(i) <= lam.rank_of_power(i) for i in range(0, mu.size + 1))
    assert dominance_leq(mu, lam) == by_rank


def test_label_json_roundtrip():
    lab = L(P((2, 2)), "II")
    assert lab.to_json() == {"partition": [2, 2], "spin": "II"}
    assert OrbitLabel.from_json(lab.to_json()) == lab
    assert str(lab) == "2,2_II"
    with pytest.raises(InvalidLabel):
        L(P((2,)), "III")
