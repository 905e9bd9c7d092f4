"""Exact arithmetic and linear algebra over the prime field GF(p).

Matrices are plain ``numpy`` integer arrays holding residues in ``[0, p)``;
``scipy.sparse`` inputs are accepted and densified.  Elimination is
Gauss-Jordan with first-nonzero pivoting, processed in column panels so that
the bulk of the work is a float64 matrix product (exact while every partial
sum stays below 2**53).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

_EXACT = float(2**53)
PANEL = 512


class FieldError(ArithmeticError):
    """Raised for division by zero or invalid moduli."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_modulus(p: int) -> int:
    if not is_prime(p):
        raise FieldError(f"modulus {p} is not prime")
    return p


@dataclass(frozen=True)
class FieldElement:
    """A residue class modulo a prime ``p``."""

    value: int
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldError("mixed moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(inv(self.value, self.p), self.p) ** (-e)
        return FieldElement(pow(self.value, e, self.p), self.p)

    def __truediv__(self, other):
        return self * inv(self._coerce(other), self.p)

    def inverse(self) -> "FieldElement":
        return FieldElement(inv(self.value, self.p), self.p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def inv(a, p: int) -> int:
    """Multiplicative inverse of ``a`` modulo ``p``."""
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def as_array(M, p: int) -> np.ndarray:
    """Dense int64 copy of ``M`` reduced into ``[0, p)``."""
    if sp.issparse(M):
        M = M.toarray()
    return np.mod(np.asarray(M, dtype=np.int64), p)


def matmul(A, B, p: int) -> np.ndarray:
    """Exact product ``A @ B`` modulo ``p``."""
    if sp.issparse(A) or sp.issparse(B):
        C = A @ B
        if sp.issparse(C):
            C = C.toarray()
        return np.mod(np.asarray(C, dtype=np.int64), p)
    A = np.asarray(A)
    B = np.asarray(B)
    inner = A.shape[-1]
    if inner * (p - 1) ** 2 < _EXACT:
        C = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
        return np.mod(C, p).astype(np.int64)
    # split the inner dimension so each partial product stays exact
    step = max(1, int(_EXACT // ((p - 1) ** 2)))
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, inner, step):
        part = np.asarray(A[:, s:s + step], dtype=np.float64) @ np.asarray(
            B[s:s + step], dtype=np.float64)
        out = np.mod(out + np.mod(part, p).astype(np.int64), p)
    return out


def matpow(A, e: int, p: int) -> np.ndarray:
    """``A**e`` modulo ``p`` by repeated squaring."""
    A = as_array(A, p)
    result = np.eye(A.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            result = matmul(result, A, p)
        e >>= 1
        if e:
            A = matmul(A, A, p)
    return result


def _fmatmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Float64 product reduced mod p; caller guarantees exactness."""
    return np.mod(A @ B, p)


def _select_plain(W: np.ndarray, p: int):
    W = W.copy()
    rows, cols = [], []
    avail = np.ones(W.shape[0], dtype=bool)
    for c in range(W.shape[1]):
        cand = np.flatnonzero(avail & (W[:, c] != 0))
        if cand.size == 0:
            continue
        r = cand[0]
        avail[r] = False
        rows.append(int(r))
        cols.append(c)
        below = np.flatnonzero(avail & (W[:, c] != 0))
        if below.size:
            f = np.mod(W[below, c] * inv(int(W[r, c]), p), p)
            W[below] = np.mod(W[below] - np.outer(f, W[r]), p)
    return rows, cols


def _select(W: np.ndarray, p: int):
    """Pivot rows/columns that first-nonzero elimination of ``W`` picks.

    Also returns the inverse of the pivot block ``W[rows][:, cols]``.
    Recursive on column halves so the heavy lifting is matrix products.
    """
    n, b = W.shape
    if b <= 8 or n <= 8:
        rows, cols = _select_plain(W, p)
        if not rows:
            return rows, cols, np.zeros((0, 0))
        return rows, cols, _small_inverse(W[np.ix_(rows, cols)], p).astype(np.float64)
    h = b // 2
    rows_l, cols_l, Ainv = _select(W[:, :h], p)
    if not rows_l:
        rows_r, cols_r, Sinv = _select(W[:, h:], p)
        return rows_r, [h + c for c in cols_r], Sinv
    keep = np.ones(n, dtype=bool)
    keep[rows_l] = False
    idx = np.flatnonzero(keep)
    # G = A^{-1} [rows_l, h:]; reduced right part of the remaining rows
    G = _fmatmul(Ainv, W[rows_l, h:], p)
    C = W[idx][:, cols_l]
    right = np.mod(W[idx, h:] - _fmatmul(C, G, p), p)
    rows_r, cols_r, Sinv = _select(right, p)
    if not rows_r:
        return rows_l, cols_l, Ainv
    # block inverse of [[A, B], [C_r, D]] with Schur complement S
    Cr = C[rows_r]
    Gr = G[:, cols_r]
    CA = _fmatmul(Cr, Ainv, p)
    top_right = np.mod(-_fmatmul(Gr, Sinv, p), p)
    top_left = np.mod(Ainv - _fmatmul(top_right, CA, p), p)
    bottom_left = np.mod(-_fmatmul(Sinv, CA, p), p)
    Minv = np.block([[top_left, top_right], [bottom_left, Sinv]])
    rows = rows_l + [int(idx[r]) for r in rows_r]
    return rows, cols_l + [h + c for c in cols_r], Minv


def _small_inverse(A: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    W = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        r = c + int(np.flatnonzero(W[c:, c])[0])
        if r != c:
            W[[c, r]] = W[[r, c]]
        W[c] = (W[c] * inv(W[c, c], p)) % p
        others = np.flatnonzero(W[:, c])
        others = others[others != c]
        if others.size:
            W[others] = (W[others] - np.outer(W[others, c], W[c])) % p
    return W[:, n:]


def rref(M, p: int):
    """Reduced row echelon form over GF(p).

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows
    (``len(pivots)`` of them) and ``pivots`` lists their pivot columns in
    increasing order.
    """
    A = as_array(M, p)
    n_rows, n_cols = A.shape
    if PANEL * (p - 1) ** 2 >= _EXACT:
        raise FieldError(f"modulus {p} too large for exact float elimination")
    rest = A.astype(np.float64)
    pivots: list[int] = []
    done = np.zeros((0, n_cols), dtype=np.float64)
    for c0 in range(0, n_cols, PANEL):
        if rest.shape[0] == 0:
            break
        c1 = min(c0 + PANEL, n_cols)
        prow, pcol, E = _select(rest[:, c0:c1], p)
        if not prow:
            continue
        gcols = [c0 + c for c in pcol]
        B = _fmatmul(E, rest[prow], p)
        keep = np.ones(rest.shape[0], dtype=bool)
        keep[prow] = False
        rest = rest[keep]
        if rest.shape[0]:
            rest = np.mod(rest - _fmatmul(rest[:, gcols], B, p), p)
        if done.shape[0]:
            done = np.mod(done - _fmatmul(done[:, gcols], B, p), p)
        done = np.concatenate([done, B], axis=0)
        pivots.extend(gcols)
    return done.astype(np.int64), pivots


def rank(M, p: int) -> int:
    """Rank of ``M`` over GF(p)."""
    A = as_array(M, p)
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(A, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` as the rows of the returned array."""
    A = as_array(M, p)
    n_cols = A.shape[1]
    R, piv = rref(A, p)
    free = [c for c in range(n_cols) if c not in set(piv)]
    N = np.zeros((len(free), n_cols), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
        if piv:
            N[i, piv] = (-R[:, f]) % p
    return N


def det(M, p: int) -> int:
    """Determinant of a square matrix over GF(p)."""
    A = as_array(M, p)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"determinant needs a square matrix, got {A.shape}")
    n = A.shape[0]
    A = A.copy()
    d = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            A[[c, r]] = A[[r, c]]
            d = -d
        d = (d * int(A[c, c])) % p
        if c + 1 < n:
            f = (A[c + 1:, c] * inv(A[c, c], p)) % p
            A[c + 1:, c:] = (A[c + 1:, c:] - np.outer(f, A[c, c:])) % p
    return d % p


def inverse(M, p: int) -> np.ndarray:
    A = as_array(M, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    R, piv = rref(np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise FieldError("matrix is singular")
    return R[:n, n:]


def solve_left(B, A, p: int):
    """Coefficients ``X`` with ``X @ B == A`` (rows of A in the row space of B).

    Returns ``None`` when some row of ``A`` is outside the row space.
    """
    B = as_array(B, p)
    A = as_array(A, p)
    k = B.shape[0]
    aug = np.concatenate([B.T, A.T], axis=1)
    R, piv = rref(aug, p)
    if any(c >= k for c in piv):
        return None
    X = np.zeros((A.shape[0], k), dtype=np.int64)
    for i, c in enumerate(piv):
        X[:, c] = R[i, k:]
    return X
