import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2triples.errors import NoSolution, NotInvertible
from sl2triples.forms import (
    congruence,
    forms_congruent,
    infinitesimal_isometry,
    is_alternating,
    is_square_class,
    is_symmetric,
    preserves_form,
    symmetric_normal_basis,
    symplectic_normal_basis,
)
from sl2triples.gfp import FieldMatrix, det, least_nonsquare, rank


def _random_form(n, p, seed, alternating=False):
    rng = np.random.default_rng(seed)
    while True:
        a = rng.integers(0, p, size=(n, n))
        g = (a - a.T) if alternating else (a + a.T)
        m = FieldMatrix(g, p)
        if rank(m) == n:
            return m


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.sampled_from([3, 5, 7]), st.integers(0, 10**6))
def test_symmetric_normal_form(n, p, seed):
    g = _random_form(n, p, seed)
    B, delta = symmetric_normal_basis(g)
    target = FieldMatrix.diag([1] * (n - 1) + [delta], p)
    assert B.T @ g @ B == target
    # discriminant class is an invariant of congruence
    assert is_square_class(det(g), p) == (delta == 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.sampled_from([3, 5, 7]), st.integers(0, 10**6))
def test_symplectic_normal_form(half, p, seed):
    n = 2 * half
    g = _random_form(n, p, seed, alternating=True)
    B = symplectic_normal_basis(g)
    I = np.eye(half, dtype=np.int64)
    Z = np.zeros((half, half), dtype=np.int64)
    assert B.T @ g @ B == FieldMatrix(np.block([[Z, I], [-I, Z]]), p)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.sampled_from([3, 5]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_congruence_transports_forms(n, p, s1, s2):
    g1, g2 = _random_form(n, p, s1), _random_form(n, p, s2)
    same_class = is_square_class(det(g1), p) == is_square_class(det(g2), p)
    assert forms_congruent(g1, g2) == same_class
    if same_class:
        P = congruence(g1, g2)
        assert P.T @ g2 @ P == g1


def test_basic_predicates():
    p = 5
    assert is_symmetric(FieldMatrix([[1, 2], [2, 0]], p))
    assert is_alternating(FieldMatrix([[0, 1], [-1, 0]], p))
    assert not is_alternating(FieldMatrix([[1, 1], [-1, 0]], p))
    assert is_square_class(4, 5) and not is_square_class(least_nonsquare(5), 5)
    g = FieldMatrix([[0, 1], [1, 0]], p)
    assert infinitesimal_isometry(FieldMatrix.diag([1, -1], p), g)
    assert preserves_form(FieldMatrix([[0, 1], [1, 0]], p), g)
    assert not preserves_form(FieldMatrix.diag([2, 2], p), g)


def test_degenerate_and_mixed_forms_rejected():
    with pytest.raises(NotInvertible):
        symmetric_normal_basis(FieldMatrix([[1, 0], [0, 0]], 3))
    with pytest.raises(NoSolution):
        congruence(FieldMatrix([[0, 1], [-1, 0]], 3), FieldMatrix.identity(2, 3))
    with pytest.raises(NoSolution):
        congruence(FieldMatrix.identity(1, 3), FieldMatrix([[2]], 3))
