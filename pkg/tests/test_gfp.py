import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2triples.errors import DimensionMismatch, NotInvertible, NotNilpotent, PowerNotZero
from sl2triples.gfp import (
    FieldMatrix,
    check_prime,
    conjugate,
    det,
    enumerate_vectors,
    inverse,
    jordan_type,
    kernel,
    least_nonsquare,
    nilpotent_exp,
    rank,
    solve_affine,
    square_roots,
)
from sl2triples.modules import restricted_sum
from sl2triples.partitions import Partition

J = FieldMatrix.jordan_block


def test_check_prime_rejects_bad_moduli():
    for bad in (1, 2, 4, 9, 1 << 17):
        with pytest.raises(ValueError):
            check_prime(bad)
    assert check_prime(7) == 7


def test_rank_examples():
    assert rank(FieldMatrix.identity(3, 3)) == 3
    assert rank(FieldMatrix.zeros(2, 2, 3)) == 0
    assert rank(J(4, 5)) == 3


def test_solve_affine_identity_and_zero():
    sol = solve_affine(FieldMatrix.identity(3, 5), [1, 2, 3])
    assert sol.particular.tolist() == [1, 2, 3] and sol.dim == 0
    sol = solve_affine(FieldMatrix.zeros(2, 2, 3), [0, 0])
    assert sol.dim == 2


def test_solve_affine_j2_against_enumeration():
    a = J(2, 3)
    sol = solve_affine(a, [1, 0])
    assert sol.particular.tolist() == [0, 1]
    assert sol.kernel.tolist() == [[1, 0]]
    # oracle: all 9 vectors of GF(3)^2
    brute = {v for v in enumerate_vectors(2, 3) if ((a.array @ np.array(v)) % 3).tolist() == [1, 0]}
    assert brute == {tuple(x) for x in sol.points()}


def test_solve_affine_inconsistent_and_mismatch():
    assert solve_affine(FieldMatrix.zeros(1, 1, 3), [1]) is None
    with pytest.raises(DimensionMismatch):
        solve_affine(FieldMatrix.identity(2, 3), [1, 2, 3])


def test_affine_space_lex_min_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(30):
        a = FieldMatrix(rng.integers(0, 3, size=(2, 4)), 3)
        x = rng.integers(0, 3, size=4)
        sol = solve_affine(a, a.array @ x % 3)
        assert tuple(sol.lex_min()) == min(tuple(int(c) for c in pt) for pt in sol.points())


def test_jordan_type_examples():
    assert jordan_type(J(3, 3)) == Partition((3,))
    assert jordan_type(FieldMatrix.block_diag([J(2, 5), J(1, 5)])) == Partition((2, 1))
    assert jordan_type(restricted_sum([1, 1], 3).E) == Partition((2, 2))
    with pytest.raises(NotNilpotent):
        jordan_type(FieldMatrix.identity(2, 3))


def test_nilpotent_exp_examples():
    for s in range(5):
        assert nilpotent_exp(FieldMatrix.zeros(3, 3, 5), s) == FieldMatrix.identity(3, 5)
    x = J(2, 3)
    assert nilpotent_exp(x, 1) == FieldMatrix.identity(2, 3) + x
    x = J(3, 5)
    assert nilpotent_exp(x, 2) == FieldMatrix.identity(3, 5) + x * 2 + (x @ x) * 2
    with pytest.raises(PowerNotZero):
        nilpotent_exp(J(4, 3), 1)


def test_conjugate_examples():
    x = FieldMatrix.block_diag([J(2, 5), J(1, 5)])
    assert conjugate(FieldMatrix.identity(3, 5), x) == x
    perm = FieldMatrix(np.eye(3, dtype=int)[[2, 0, 1]], 5)
    assert jordan_type(conjugate(perm, x)) == Partition((2, 1))
    y = conjugate(FieldMatrix.diag([2, 1], 5), J(2, 5))
    assert y.tolist() == [[0, 2], [0, 0]]
    with pytest.raises(NotInvertible):
        conjugate(FieldMatrix.zeros(2, 2, 5), J(2, 5))


def test_det_and_inverse_against_permutation_expansion():
    rng = np.random.default_rng(0)
    for n in range(1, 5):
        for _ in range(10):
            a = rng.integers(0, 5, size=(n, n))
            leibniz = 0
            for perm in itertools.permutations(range(n)):
                sign = (-1) ** sum(1 for i in range(n) for j in range(i) if perm[j] > perm[i])
                leibniz += sign * int(np.prod([a[i, perm[i]] for i in range(n)]))
            m = FieldMatrix(a, 5)
            assert det(m) == leibniz % 5
            if det(m):
                assert m @ inverse(m) == FieldMatrix.identity(n, 5)


def test_square_classes():
    assert sorted(square_roots(7)) == [1, 2, 4]
    assert least_nonsquare(7) == 3
    assert least_nonsquare(5) == 2


def _nilpotent(draw_parts, p, seed):
    lam = Partition(sorted(draw_parts, reverse=True))
    x = FieldMatrix.block_diag([J(k, p) for k in lam])
    rng = np.random.default_rng(seed)
    while True:
        g = FieldMatrix(rng.integers(0, p, size=(lam.size, lam.size)), p)
        if det(g):
            return lam, conjugate(g, x)


parts = st.lists(st.integers(1, 4), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(parts, st.sampled_from([3, 5, 7]), st.integers(0, 10**6))
def test_jordan_type_conjugation_invariant(ps, p, seed):
    lam, x = _nilpotent(ps, p, seed)
    assert jordan_type(x) == lam
    assert sum(lam) == x.rows
    for i in range(1, lam.size + 1):
        assert rank(x**i) == lam.rank_of_power(i)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=4), st.sampled_from([3, 5]), st.integers(0, 10**6), st.integers(0, 4))
def test_exp_is_a_one_parameter_group(ps, p, seed, s):
    _, x = _nilpotent(ps, p, seed)
    n = x.rows
    assert nilpotent_exp(x, s) @ nilpotent_exp(x, -s) == FieldMatrix.identity(n, p)
    assert nilpotent_exp(x, s) @ nilpotent_exp(x, 1) == nilpotent_exp(x, s + 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([3, 5, 7, 11]), st.integers(0, 10**6))
def test_rank_nullity(r, c, p, seed):
    a = FieldMatrix(np.random.default_rng(seed).integers(0, p, size=(r, c)), p)
    k = kernel(a)
    assert rank(a) + k.shape[0] == c
    assert not (a.array @ k.T % p).any()


def test_field_matrix_is_immutable_value():
    m = FieldMatrix([[1, 2], [3, 4]], 5)
    with pytest.raises(ValueError):
        m.array[0, 0] = 3
    assert m == FieldMatrix([[6, 7], [8, 9]], 5)
    assert hash(m) == hash(FieldMatrix([[1, 2], [3, 4]], 5))
