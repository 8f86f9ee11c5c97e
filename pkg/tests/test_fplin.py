"""Exact linear algebra over F_p.

The fixed expected values below were derived by hand or by enumeration over
the (tiny) ambient spaces before the implementation existed; they are frozen
here as oracles.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurext import fplin


def test_rref_example_f5():
    R, pivots = fplin.rref(np.array([[1, 2], [2, 4]]), 5)
    assert R.tolist() == [[1, 2], [0, 0]]
    assert pivots == [0]


def test_kernel_example_f2():
    # enumerate all 4 vectors of F_2^2: solutions of x + y = 0 are (0,0), (1,1)
    sols = [
        (x, y)
        for x in range(2)
        for y in range(2)
        if (x + y) % 2 == 0 and (x, y) != (0, 0)
    ]
    assert sols == [(1, 1)]
    K = fplin.kernel_basis(np.array([[1, 1]]), 2)
    assert K.shape == (2, 1)
    assert K[:, 0].tolist() == [1, 1]


def test_solve_example_f5():
    # 2x = 3 over F_5 has the unique solution x = 4
    x = fplin.solve(np.array([[2]]), np.array([3]), 5)
    assert x.tolist() == [4]


def test_solve_unsolvable_returns_none():
    M = np.array([[1, 0], [0, 0]])
    assert fplin.solve(M, np.array([0, 1]), 3) is None


def test_solve_stacked_columns():
    M = np.array([[1, 1], [0, 1]])
    B = np.array([[1, 0], [0, 1]])
    X = fplin.solve(M, B, 5)
    assert (fplin.matmul(M, X, 5) == B % 5).all()


def test_kron_convention():
    A = np.array([[0, 1], [2, 0]])
    B = np.array([[1, 1], [0, 1]])
    K = fplin.to_dense(fplin.kron(A, B, 3), 3)
    assert (K == np.kron(A, B) % 3).all()


def test_inverse():
    M = np.array([[1, 2], [3, 4]])
    Minv = fplin.inverse(M, 5)
    assert (fplin.matmul(M, Minv, 5) == np.eye(2, dtype=np.int64)).all()
    assert fplin.inverse(np.array([[1, 2], [2, 4]]), 5) is None


def test_sparse_roundtrip():
    M = np.zeros((40, 40), dtype=np.int64)
    M[0, 0] = 1
    S = fplin.to_sparse(M, 7)
    assert fplin.is_sparse(S)
    assert (fplin.to_dense(S, 7) == M).all()


small_primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrix_and_prime(draw, max_dim=6):
    p = draw(small_primes)
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    data = draw(
        st.lists(
            st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols
        )
    )
    return np.array(data, dtype=np.int64).reshape(rows, cols), p


@given(matrix_and_prime())
@settings(max_examples=60)
def test_rank_nullity(mp):
    M, p = mp
    K = fplin.kernel_basis(M, p)
    assert fplin.rank(M, p) + K.shape[1] == M.shape[1]
    if K.shape[1]:
        assert not (fplin.matmul(M, K, p)).any()


@given(matrix_and_prime())
@settings(max_examples=60)
def test_rref_idempotent(mp):
    M, p = mp
    R, piv = fplin.rref(M, p)
    R2, piv2 = fplin.rref(R, p)
    assert (R == R2).all() and piv == piv2


@given(matrix_and_prime())
@settings(max_examples=60)
def test_solve_consistency(mp):
    """M x = M v is always solvable and any solution differs from v by kernel."""
    M, p = mp
    rng = np.random.default_rng(0)
    v = rng.integers(0, p, M.shape[1])
    b = fplin.matmul(M, v, p)
    x = fplin.solve(M, b, p)
    assert x is not None
    assert (fplin.matmul(M, x, p) == b).all()


def test_echelon_basis_insert_and_contains():
    p = 5
    eb = fplin.EchelonBasis(3, p)
    r = eb.insert(np.array([[0, 2, 1]]))
    assert r == [0] and eb.dim == 1
    assert eb.contains(np.array([0, 4, 2]))
    assert not eb.contains(np.array([1, 0, 0]))
    r = eb.insert(np.array([[0, 4, 2], [1, 0, 0]]))
    assert r == [None, 1] and eb.dim == 2


def test_echelon_basis_coordinates():
    p = 7
    eb = fplin.EchelonBasis(3, p)
    v1 = np.array([1, 2, 3])
    v2 = np.array([0, 1, 5])
    eb.insert(np.stack([v1, v2]))
    w = (3 * v1 + 4 * v2) % p
    c = eb.coordinates(w)
    assert c is not None
    back = (c[0] * eb.rows[0] + c[1] * eb.rows[1]) % p
    assert (back == w).all()


@given(matrix_and_prime(max_dim=5))
@settings(max_examples=40)
def test_echelon_matches_rank(mp):
    M, p = mp
    eb = fplin.EchelonBasis(M.shape[1], p)
    eb.insert(M)
    assert eb.dim == fplin.rank(M, p)
