import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2triples import _pykernels, kernels

ck = pytest.importorskip("sl2triples._ckernels")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.sampled_from([3, 5, 7, 13, 65521]), st.integers(0, 2**31))
def test_rref_backends_agree(m, n, p, seed):
    a = np.random.default_rng(seed).integers(0, p, size=(m, n))
    r1, p1 = _pykernels.rref(a, p)
    r2, p2 = ck.rref(a, p)
    assert p1 == p2
    assert np.array_equal(r1, r2)
    ncols = max(1, n - 1)
    assert _pykernels.rref(a, p, ncols)[1] == ck.rref(a, p, ncols)[1]


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.sampled_from([3, 7, 65521]), st.integers(0, 2**31))
def test_matmul_backends_agree(m, k, n, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(m, k))
    b = rng.integers(0, p, size=(k, n))
    expect = [[sum(int(a[i, t]) * int(b[t, j]) for t in range(k)) % p for j in range(n)] for i in range(m)]
    assert _pykernels.matmul(a, b, p).tolist() == expect
    assert ck.matmul(a, b, p).tolist() == expect


def test_rref_is_reduced():
    a = np.array([[2, 4, 1], [1, 2, 0], [0, 0, 1]])
    R, piv = ck.rref(a, 5)
    assert piv == (0, 2)
    assert R.tolist() == [[1, 2, 0], [0, 0, 1], [0, 0, 0]]
