import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie import fields
from modlie.fields import FieldElement, FieldError


def naive_rank(M, p):
    """Plain Gaussian elimination, used as an independent oracle."""
    A = [list(map(int, row)) for row in np.asarray(M) % p]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        iv = pow(A[r][c], p - 2, p)
        A[r] = [x * iv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


# ---------------------------------------------------------
# scalars
# ---------------------------------------------------------
def test_inverse_examples():
    assert fields.inv(3, 7) == 5
    assert fields.inv(4, 7) == 2
    for p in (7, 11, 13):
        assert fields.inv(1, p) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        fields.inv(0, 7)


def test_inverse_exhaustive_small_fields():
    for p in (7, 11, 13):
        for a in range(1, p):
            assert a * fields.inv(a, p) % p == 1


def test_field_element_arithmetic():
    a, b = FieldElement(3, 7), FieldElement(5, 7)
    assert int(a + b) == 1
    assert int(a * b) == 1
    assert int(a / b) == int(a * FieldElement(3, 7))
    assert int(a ** 6) == 1


def test_non_prime_modulus_rejected():
    with pytest.raises(FieldError):
        FieldElement(1, 8)


# ---------------------------------------------------------
# matrices
# ---------------------------------------------------------
def test_rank_examples():
    assert fields.rank(np.eye(5, dtype=np.int64), 7) == 5
    assert fields.rank(np.zeros((4, 6), dtype=np.int64), 7) == 0
    rows = np.eye(49, dtype=np.int64)   # flattened elementary matrices of size 7
    assert fields.rank(rows, 7) == 49


def test_nullspace_examples():
    assert fields.nullspace(np.eye(4, dtype=np.int64), 7).shape[0] == 0
    assert fields.nullspace(np.zeros((2, 5), dtype=np.int64), 7).shape[0] == 5
    N = fields.nullspace(np.diag([0, 1, 1, 1]), 7)
    assert N.shape[0] == 1
    assert np.array_equal(N[0] * fields.inv(int(N[0, 0]), 7) % 7, [1, 0, 0, 0])


def test_det_examples():
    assert fields.det(np.eye(3, dtype=np.int64), 7) == 1
    assert fields.det(np.array([[1, 2], [1, 2]]), 7) == 0
    assert fields.det(np.diag([2, 3]), 7) == 6
    with pytest.raises(ValueError):
        fields.det(np.ones((2, 3), dtype=np.int64), 7)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.sampled_from([7, 11, 13]), st.integers(0, 10**6))
def test_rank_nullity_against_naive(r, c, p, seed):
    M = np.random.default_rng(seed).integers(0, 3, size=(r, c))
    rk = fields.rank(M, p)
    assert rk == naive_rank(M, p)
    N = fields.nullspace(M, p)
    assert rk + N.shape[0] == c
    if N.shape[0]:
        assert not np.any(fields.matmul(M, N.T, p))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.sampled_from([7, 11]), st.integers(0, 10**6))
def test_inverse_and_det(n, p, seed):
    M = np.random.default_rng(seed).integers(0, p, size=(n, n))
    d = fields.det(M, p)
    if d:
        Mi = fields.inverse(M, p)
        assert np.array_equal(fields.matmul(M, Mi, p), np.eye(n, dtype=np.int64))
    else:
        assert fields.rank(M, p) < n


def test_large_rank_uses_blocked_path():
    rng = np.random.default_rng(1)
    A = rng.integers(0, 7, size=(700, 40))
    B = rng.integers(0, 7, size=(40, 900))
    assert fields.rank(fields.matmul(A, B, 7), 7) == 40


def test_matmul_exact_for_long_inner_dimension():
    p = 13
    A = np.full((2, 200000), p - 1, dtype=np.int64)
    B = np.full((200000, 2), p - 1, dtype=np.int64)
    assert np.all(fields.matmul(A, B, p) == (200000 % p))


def test_solve_left():
    p = 7
    B = np.array([[1, 0, 2], [0, 1, 3]])
    X = np.array([[2, 5]])
    A = fields.matmul(X, B, p)
    assert np.array_equal(fields.solve_left(B, A, p), X)
    assert fields.solve_left(B, np.array([[0, 0, 1]]), p) is None
