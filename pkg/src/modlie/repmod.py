"""Finite-dimensional chi-representations.

Modules are realised over GF(p).  When a character needs weights outside the
prime field (chi(h) != 0 forces lam^p - lam = chi(h) with no root in GF(p)),
scalars come from the Artin-Schreier extension K = GF(p)[t]/(t^p - t - 1):
a K-module of K-dimension d is stored as a GF(p)-module of dimension d*k, the
K-entry c becoming the block sum_t c_t C^t (C the companion matrix of t), and
multiplication by t is carried along as an extra generator.  K-submodules
are then exactly the GF(p)-subspaces stable under all generators.

Baby Verma modules carry a grading by weights mod p; every K-submodule is a
sum of its graded pieces, which keeps spinning and kernels blockwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp

from . import fields
from .chevalley import LieAlgebra
from .pbw import straightener
from .roots import cartan_integer
from .redenv import Character, CharacterError, left_regular, reduced_basis


class ModuleError(ValueError):
    pass


class InfeasibleError(RuntimeError):
    """A request exceeds the desk-scale budget; never answered partially."""


# --- the extension field ---------------------------------------------------

class ExtensionField:
    """GF(p)[t]/(t^p - t - 1) for k = p, or GF(p) itself for k = 1."""

    def __init__(self, p: int, k: int):
        if k not in (1, p):
            raise ModuleError("only the prime field and the degree-p extension are used")
        self.p, self.k = p, k
        C = np.zeros((k, k), dtype=np.int64)
        if k > 1:
            for j in range(k - 1):
                C[j + 1, j] = 1
            C[0, k - 1] = 1
            C[1, k - 1] = 1
        else:
            C[0, 0] = 0
        self.C = C
        self.powers = [np.eye(k, dtype=np.int64)]
        for _ in range(1, k):
            self.powers.append(fields.matmul(self.powers[-1], C, p))

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def scalar(self, c) -> np.ndarray:
        v = np.zeros(self.k, dtype=np.int64)
        v[0] = int(c) % self.p
        return v

    def theta(self) -> np.ndarray:
        if self.k == 1:
            raise ModuleError("the prime field has no generator t")
        v = np.zeros(self.k, dtype=np.int64)
        v[1] = 1
        return v

    def block(self, c) -> np.ndarray:
        """Multiplication-by-c matrix on K = GF(p)^k."""
        c = np.asarray(c, dtype=np.int64)
        return np.mod(np.tensordot(c, np.array(self.powers), axes=1), self.p)

    def mul(self, a, b) -> np.ndarray:
        return fields.matmul(self.block(a), np.asarray(b, dtype=np.int64)[:, None], self.p)[:, 0]

    def add(self, a, b) -> np.ndarray:
        return np.mod(np.asarray(a) + np.asarray(b), self.p)

    def pow(self, a, e: int) -> np.ndarray:
        out = self.scalar(1)
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a) -> np.ndarray:
        B = fields.inverse(self.block(a), self.p)
        return B[:, 0]

    def is_zero(self, a) -> bool:
        return not np.any(np.asarray(a) % self.p)

    def as_text(self, a) -> str:
        terms = [(int(c), i) for i, c in enumerate(a) if c]
        if not terms:
            return "0"
        return " + ".join(str(c) if i == 0 else (f"{c}*t" if i == 1 else f"{c}*t^{i}")
                          for c, i in terms)


def splitting_degree(chi: Character) -> int:
    """k = p when some chi(h_i) != 0, else 1."""
    return chi.alg.p if any(chi.values[i] for i in chi.alg.coroot_indices()) else 1


def compatible_weights(chi: Character, field_: Optional[ExtensionField] = None):
    """All lam with lam_i^p - lam_i = chi(h_i), in the fixed enumeration.

    lam_i = chi(h_i) t + c_i with c ranging over GF(p)^l lexicographically.
    """
    F = field_ or ExtensionField(chi.alg.p, splitting_degree(chi))
    cor = chi.alg.coroot_indices()
    out = []
    for cs in itertools.product(range(chi.alg.p), repeat=len(cor)):
        lam = []
        for i, c in zip(cor, cs):
            v = F.scalar(c)
            if chi.values[i]:
                v = F.add(v, (chi.values[i] * F.theta()) % chi.alg.p)
            lam.append(v)
        out.append(tuple(lam))
    return out


# --- modules ---------------------------------------------------------------

@dataclass
class RepModule:
    """A chi-representation realised over GF(p).

    ``mats[i]`` is the action of the i-th Lie basis element on column vectors
    of length ``gdim``.  ``scalar`` is multiplication by t when k > 1.
    ``grading`` labels each coordinate with a weight class; ``highest`` holds
    GF(p)-rows spanning K v0 for highest-weight modules.
    """

    alg: LieAlgebra
    chi: Character
    field: ExtensionField
    mats: list
    scalar: Optional[sp.csr_matrix] = None
    labels: Optional[list] = None
    grading: Optional[np.ndarray] = None
    highest: Optional[np.ndarray] = None
    cyclic: bool = False
    lam: Optional[tuple] = None
    _dense: dict = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.alg.p

    @property
    def k(self) -> int:
        return self.field.k

    @property
    def gdim(self) -> int:
        return self.mats[0].shape[0]

    @property
    def dim(self) -> int:
        """Dimension over the scalar field K."""
        return self.gdim // self.k

    def dense(self, i: int) -> np.ndarray:
        if i not in self._dense:
            self._dense[i] = fields.as_array(self.mats[i], self.p)
        return self._dense[i]

    def generators(self) -> list:
        gens = list(self.mats)
        if self.scalar is not None:
            gens.append(self.scalar)
        return gens

    def lam_text(self) -> list:
        return [self.field.as_text(v) for v in self.lam] if self.lam is not None else []


def _csr(A, p) -> sp.csr_matrix:
    M = sp.csr_matrix(np.mod(np.asarray(A, dtype=np.int64), p))
    M.eliminate_zeros()
    return M


def _spmod(M, p) -> sp.csr_matrix:
    M = sp.csr_matrix(M)
    M.data %= p
    M.eliminate_zeros()
    return M


def make_module(alg, chi, mats, field_=None, scalar=None, **kw) -> RepModule:
    F = field_ or ExtensionField(alg.p, 1)
    mats = [_csr(m, alg.p) if not sp.issparse(m) else _spmod(m, alg.p) for m in mats]
    if scalar is not None and not sp.issparse(scalar):
        scalar = _csr(scalar, alg.p)
    return RepModule(alg, chi, F, mats, scalar, **kw)


# --- invariants of modules -------------------------------------------------

def bracket_failures(M: RepModule) -> list:
    """Pairs (a, b) with [rho(a), rho(b)] != rho([a, b])."""
    p = M.p
    T = M.alg.table
    bad = []
    n = M.alg.n
    for i in range(n):
        for j in range(i + 1, n):
            lhs = M.mats[i] @ M.mats[j] - M.mats[j] @ M.mats[i]
            rhs = sp.csr_matrix(M.mats[0].shape, dtype=np.int64)
            for kk in np.flatnonzero(T[i, j]):
                rhs = rhs + int(T[i, j, kk]) * M.mats[kk]
            D = _spmod(lhs - rhs, p)
            if D.nnz:
                bad.append((M.alg.labels[i], M.alg.labels[j]))
    if M.scalar is not None:
        for i in range(n):
            if _spmod(M.scalar @ M.mats[i] - M.mats[i] @ M.scalar, p).nnz:
                bad.append(("t", M.alg.labels[i]))
    return bad


def _sppow(A, e, p):
    out = sp.identity(A.shape[0], dtype=np.int64, format="csr")
    base = A
    while e:
        if e & 1:
            out = _spmod(out @ base, p)
        base = _spmod(base @ base, p)
        e >>= 1
    return out


def chi_law_failures(M: RepModule) -> list:
    """Basis x with rho(x)^p - rho(x^[p]) != chi(x)^p I."""
    p = M.p
    bad = []
    I = sp.identity(M.gdim, dtype=np.int64, format="csr")
    for i in range(M.alg.n):
        lhs = _sppow(M.mats[i], p, p)
        rhs = (M.mats[i] if M.alg.is_coroot(i) else 0 * I) + pow(M.chi.values[i], p, p) * I
        if _spmod(lhs - rhs, p).nnz:
            bad.append(M.alg.labels[i])
    return bad


def verify_module(M: RepModule) -> None:
    bad = bracket_failures(M)
    if bad:
        raise ModuleError(f"bracket relations fail for {bad[:5]}")
    bad = chi_law_failures(M)
    if bad:
        raise ModuleError(f"chi-representation law fails for {bad}")


# --- baby Verma modules ----------------------------------------------------

def _symbolic_actions(alg: LieAlgebra, chi: Character):
    """lam-independent action data: per generator, (src, tgt, coeff, h-exponents)."""
    cache = alg.__dict__.setdefault("_verma_cache", {})
    key = chi.values
    if key in cache:
        return cache[key]
    p = alg.p
    nn = alg.n_neg
    l = alg.rank
    mons = [tuple(int(x) for x in m) for m in np.ndindex(*([p] * nn))]
    pos = {m: i for i, m in enumerate(mons)}
    s = straightener(alg)
    zeros = (0,) * (alg.n - nn)
    acts = []
    for g in range(alg.n):
        rows = []
        for src, a in enumerate(mons):
            for m, c in s.lmul_gen(g, a + zeros).items():
                if any(m[nn + l:]):
                    continue
                neg = list(m[:nn])
                for i in range(nn):
                    while neg[i] >= p:
                        neg[i] -= p
                        c = c * chi.values[i] % p
                if c % p == 0:
                    continue
                rows.append((src, pos[tuple(neg)], c % p, m[nn:nn + l]))
        acts.append(rows)
    cache[key] = (mons, acts)
    return mons, acts


def _weight_labels(alg: LieAlgebra, mons) -> np.ndarray:
    """Weight class (mod p) of each monomial, encoded as one integer."""
    p = alg.p
    nn = alg.n_neg
    shift = np.array([[cartan_integer(alg.rs.base[j], alg.basis_roots[i])
                       for j in range(alg.rank)] for i in range(nn)], dtype=np.int64)
    A = np.array(mons, dtype=np.int64).reshape(len(mons), nn)
    W = np.mod(A @ shift, p)
    return W @ (p ** np.arange(alg.rank))


def build_baby_verma(alg: LieAlgebra, chi: Character, lam=None) -> RepModule:
    """Z_chi(lam) = U_chi(L) (x)_{U_chi(b)} K v0, basis f^a v0 with a < p.

    ``lam`` is a tuple of K-elements (or integers when chi vanishes on the
    coroots).  Requires chi(x_a) = 0 for positive a and lam_i^p - lam_i =
    chi(h_i).
    """
    if chi.alg is not alg:
        raise CharacterError("character belongs to a different algebra")
    p = alg.p
    if not chi.is_standard():
        bad = [alg.labels[i] for i in alg.positive_indices() if chi.values[i]]
        raise CharacterError(f"character is not in standard position: nonzero on {bad}; "
                             "conjugate it by a Weyl group element first")
    F = ExtensionField(p, splitting_degree(chi))
    k = F.k
    cor = alg.coroot_indices()
    if lam is None:
        lam = compatible_weights(chi, F)[0]
    lam = tuple(F.scalar(v) if np.ndim(v) == 0 else np.asarray(v, dtype=np.int64) % p
                for v in lam)
    if len(lam) != alg.rank:
        raise CharacterError("one weight value per simple coroot is required")
    for j, (i, v) in enumerate(zip(cor, lam)):
        if len(v) != k:
            raise CharacterError(f"weight for {alg.labels[i]} lies in the wrong field")
        if not F.is_zero(F.add(F.add(F.pow(v, p), -v), F.scalar(-chi.values[i]))):
            raise CharacterError(f"weight incompatible with chi at {alg.labels[i]}: "
                                 f"lam^p - lam != chi(h)")
    mons, acts = _symbolic_actions(alg, chi)
    d = len(mons)
    maxe = p
    powers = [[F.pow(v, e) for e in range(maxe + 1)] for v in lam]
    mats = []
    for g in range(alg.n):
        A = np.zeros((k, d, d), dtype=np.int64)
        for src, tgt, c, hexp in acts[g]:
            val = F.scalar(c)
            for j, e in enumerate(hexp):
                if e:
                    val = F.mul(val, powers[j][e]) if e <= maxe else F.mul(val, F.pow(lam[j], e))
            A[:, tgt, src] = (A[:, tgt, src] + val) % p
        if k == 1:
            mats.append(_csr(A[0], p))
        else:
            G = sp.csr_matrix((d * k, d * k), dtype=np.int64)
            for t in range(k):
                if A[t].any():
                    G = G + sp.kron(sp.csr_matrix(A[t]), sp.csr_matrix(F.powers[t]), format="csr")
            mats.append(_spmod(G, p))
    scalar = None
    if k > 1:
        scalar = _spmod(sp.kron(sp.identity(d, dtype=np.int64), sp.csr_matrix(F.C), format="csr"), p)
    labels = []
    for m in mons:
        f = [f"{alg.labels[i]}^{e}" for i, e in enumerate(m) if e]
        labels.append(" ".join(f) + " v0" if f else "v0")
    grading = np.repeat(_weight_labels(alg, mons), k)
    highest = np.zeros((k, d * k), dtype=np.int64)
    highest[np.arange(k), np.arange(k)] = 1
    return RepModule(alg, chi, F, mats, scalar, labels, grading, highest, True, lam)


# --- spinning --------------------------------------------------------------

def _blocks(M: RepModule):
    if M.grading is None:
        return {0: np.arange(M.gdim)}, np.zeros(M.gdim, dtype=np.int64)
    labs = M.grading
    return {int(g): np.flatnonzero(labs == g) for g in np.unique(labs)}, labs


def _assemble(M: RepModule, parts: dict, blocks: dict) -> np.ndarray:
    rows = []
    for g, R in parts.items():
        if R.shape[0]:
            full = np.zeros((R.shape[0], M.gdim), dtype=np.int64)
            full[:, blocks[g]] = R
            rows.append(full)
    if not rows:
        return np.zeros((0, M.gdim), dtype=np.int64)
    out = np.concatenate(rows, axis=0)
    lead = [int(np.flatnonzero(r)[0]) for r in out]
    return out[np.argsort(lead, kind="stable")]


def spin(M: RepModule, v, transpose: bool = False, gens=None) -> np.ndarray:
    """Echelon basis (rows) of the submodule generated by the rows of ``v``.

    With ``transpose`` the transposed generators are used, which spins in
    the dual module.
    """
    p = M.p
    V = np.mod(np.atleast_2d(np.asarray(v, dtype=np.int64)), p)
    if not V.any():
        raise ModuleError("cannot spin the zero vector")
    if gens is None:
        gens = M.generators()
    gens = [sp.csc_matrix(g.T if transpose else g) for g in gens]
    blocks, labs = _blocks(M)
    basis: dict = {}
    frontier: dict = {}

    def offer(g, rows):
        rows = np.mod(rows, p)
        rows = rows[np.any(rows, axis=1)]
        if not rows.shape[0]:
            return
        R, piv = basis.get(g, (np.zeros((0, len(blocks[g])), dtype=np.int64), []))
        if piv:
            rows = np.mod(rows - fields.matmul(rows[:, piv], R, p), p)
            rows = rows[np.any(rows, axis=1)]
            if not rows.shape[0]:
                return
        N, _ = fields.rref(rows, p)
        R2, piv2 = fields.rref(np.concatenate([R, N], axis=0), p)
        basis[g] = (R2, piv2)
        frontier[g] = np.concatenate([frontier[g], N], axis=0) if g in frontier else N

    for g, idx in blocks.items():
        offer(g, V[:, idx])
    while frontier:
        work = frontier
        frontier = {}
        for g, N in work.items():
            idx = blocks[g]
            for G in gens:
                img = np.mod(np.asarray((G[:, idx] @ N.T.astype(np.float64))), p).astype(np.int64)
                if not img.any():
                    continue
                hit = np.flatnonzero(np.any(img, axis=1))
                for g2 in np.unique(labs[hit]):
                    offer(int(g2), img[blocks[int(g2)]].T)
    return _assemble(M, {g: R for g, (R, _) in basis.items()}, blocks)


def invariants(M: RepModule) -> np.ndarray:
    """Common kernel of the positive root vectors, as homogeneous rows."""
    p = M.p
    blocks, _ = _blocks(M)
    gens = [sp.csc_matrix(M.mats[i]) for i in M.alg.positive_indices()]
    parts = {}
    for g, idx in blocks.items():
        stack = [G[:, idx] for G in gens]
        S = sp.vstack(stack).tocsr()
        nz = np.flatnonzero(np.diff(S.indptr))
        A = S[nz].toarray() if nz.size else np.zeros((0, len(idx)), dtype=np.int64)
        parts[g] = fields.nullspace(A, p) if A.shape[0] else np.eye(len(idx), dtype=np.int64)
    return _assemble(M, parts, blocks)


# --- submodules and quotients ---------------------------------------------

def in_span(R: np.ndarray, v: np.ndarray, p: int) -> bool:
    if R.shape[0] == 0:
        return not np.any(v % p)
    return fields.rank(np.vstack([R, v]), p) == fields.rank(R, p)


def is_submodule(M: RepModule, W: np.ndarray) -> bool:
    p = M.p
    R, piv = fields.rref(W, p)
    for G in M.generators():
        img = fields.as_array((G @ R.T).T, p)
        red = np.mod(img - fields.matmul(img[:, piv], R, p), p)
        if red.any():
            return False
    return True


def quotient(M: RepModule, W: np.ndarray) -> RepModule:
    """M / W for a submodule spanned by the rows of W."""
    p = M.p
    R, piv = fields.rref(W, p)
    keep = np.array([c for c in range(M.gdim) if c not in set(piv)], dtype=np.int64)
    Rn = R[:, keep]

    def q(G):
        G = fields.as_array(G, p)
        return np.mod(G[np.ix_(keep, keep)] - fields.matmul(Rn.T, G[np.ix_(piv, keep)], p), p)

    mats = [q(G) for G in M.mats]
    scalar = q(M.scalar) if M.scalar is not None else None
    highest = None
    if M.highest is not None:
        h = np.mod(M.highest - fields.matmul(M.highest[:, piv], R, p), p)[:, keep]
        highest = h if h.any() else None
    grading = M.grading[keep] if M.grading is not None else None
    return make_module(M.alg, M.chi, mats, M.field, scalar, grading=grading, highest=highest,
                       cyclic=M.cyclic and highest is not None, lam=M.lam)


def submodule(M: RepModule, W: np.ndarray) -> RepModule:
    """The action restricted to the submodule spanned by the rows of W."""
    p = M.p
    R, piv = fields.rref(W, p)

    def r(G):
        img = fields.as_array((G @ R.T), p)   # columns: images of basis rows
        return img[piv]

    mats = [r(G) for G in M.mats]
    scalar = r(M.scalar) if M.scalar is not None else None
    grading = None
    if M.grading is not None:
        grading = M.grading[piv]
    return make_module(M.alg, M.chi, mats, M.field, scalar, grading=grading, lam=M.lam)


# --- irreducibility ----------------------------------------------------------

@dataclass
class Verdict:
    status: str                     # simple | not-simple | unknown
    method: str
    witness: Optional[np.ndarray] = None
    seed: int = 0

    @property
    def simple(self) -> Optional[bool]:
        return {"simple": True, "not-simple": False}.get(self.status)


def _random_element(M: RepModule, rng, gens_dense):
    p = M.p
    d = M.gdim
    A = np.zeros((d, d), dtype=np.int64)
    for _ in range(3):
        i, j = rng.integers(len(gens_dense), size=2)
        A = (A + int(rng.integers(1, p)) * fields.matmul(gens_dense[i], gens_dense[j], p)) % p
    for G in gens_dense:
        A = (A + int(rng.integers(p)) * G) % p
    A = (A + int(rng.integers(p)) * np.eye(d, dtype=np.int64)) % p
    return A


EXHAUSTIVE_LIMIT = 512
KERNEL_LINE_LIMIT = 20000


def is_simple(M: RepModule, seed: int = 0, attempts: int = 60) -> Verdict:
    """Decide irreducibility of a K-module.

    Highest-weight modules use the invariant-vector certificate: positive
    root vectors act nilpotently, so every nonzero submodule meets the
    invariants; if those form one K-line generating M, M is simple.
    Otherwise Norton's criterion with seeded random algebra elements; when
    every sampled kernel is bigger than one K-line, small modules fall back
    to spinning every line of the smallest kernel found.
    """
    p, k, D = M.p, M.k, M.gdim
    if D == k:
        return Verdict("simple", "dimension one", None, seed)
    if M.highest is not None and M.chi.is_standard():
        inv_rows = invariants(M)
        if inv_rows.shape[0] == k:
            if M.cyclic or spin(M, inv_rows[0]).shape[0] == D:
                return Verdict("simple", "highest-weight certificate", None, seed)
        else:
            for w in inv_rows:
                if in_span(M.highest, w, p):
                    continue
                if spin(M, w).shape[0] < D:
                    return Verdict("not-simple", "singular vector", w, seed)
    rng = np.random.default_rng(seed)
    gens = [fields.as_array(G, p) for G in M.generators()]
    best = None
    for _ in range(attempts):
        A = _random_element(M, rng, gens)
        N = fields.nullspace(A, p)
        if N.shape[0] == 0:
            continue
        if best is None or N.shape[0] < best[1].shape[0]:
            best = (A, N)
        S = spin(M, N[0])
        if S.shape[0] < D:
            return Verdict("not-simple", "Norton kernel spin", N[0], seed)
        Nt = fields.nullspace(A.T, p)
        St = spin(M, Nt[0], transpose=True)
        if St.shape[0] < D:
            ann = fields.nullspace(St, p)
            return Verdict("not-simple", "Norton dual spin", ann[0], seed)
        if N.shape[0] == k:
            return Verdict("simple", "Norton criterion", None, seed)
    if D <= EXHAUSTIVE_LIMIT:
        for v in np.eye(D, dtype=np.int64):
            if spin(M, v).shape[0] < D:
                return Verdict("not-simple", "basis vector spin", v, seed)
        if best is not None and p ** best[1].shape[0] <= KERNEL_LINE_LIMIT:
            # Norton with a larger kernel: every kernel line must spin to M
            A, N = best
            n = N.shape[0]
            for c in itertools.product(range(p), repeat=n):
                first = next((x for x in c if x), 0)
                if first != 1:
                    continue
                v = np.mod(np.array(c, dtype=np.int64) @ N, p)
                if spin(M, v).shape[0] < D:
                    return Verdict("not-simple", "kernel line spin", v, seed)
            return Verdict("simple", "Norton criterion, all kernel lines", None, seed)
    return Verdict("unknown", "inconclusive", None, seed)


def simple_head(M: RepModule, seed: int = 0) -> RepModule:
    """A simple quotient of M, by repeatedly factoring out proper submodules."""
    while True:
        v = is_simple(M, seed)
        if v.status == "simple":
            return M
        if v.status != "not-simple":
            raise ModuleError("irreducibility undecided; cannot reach a simple quotient")
        M = quotient(M, spin(M, v.witness))


def composition_factors(M: RepModule, seed: int = 0) -> list:
    """K-dimensions of the composition factors of M (any order)."""
    stack = [M]
    out = []
    while stack:
        X = stack.pop()
        v = is_simple(X, seed)
        if v.status == "simple":
            out.append(X.dim)
            continue
        if v.status != "not-simple":
            raise ModuleError("irreducibility undecided during chopping")
        W = spin(X, v.witness)
        stack.append(submodule(X, W))
        stack.append(quotient(X, W))
    return sorted(out)


# --- dimension sweeps ------------------------------------------------------

DEFAULT_BUDGET = 4096


def feasibility(alg: LieAlgebra, chi: Character, budget: int = DEFAULT_BUDGET):
    """Reason string when a sweep is out of budget, else None."""
    if not chi.is_standard():
        return "character is not in standard position"
    d = alg.p ** alg.n_neg * splitting_degree(chi)
    if alg.rs.family == "A" and alg.rank <= 2 and d <= budget:
        return None
    return (f"{alg.rs.name} at p = {alg.p}: baby Verma modules have GF(p)-dimension "
            f"{alg.p}^{alg.n_neg} x {splitting_degree(chi)} = {d}; budget {budget} and "
            "the sweep is gated to sl_2 and sl_3")


@dataclass
class SweepResult:
    dims: list          # K-dimension of the simple head of each Z(lam)
    simple_vermas: int  # how many Z(lam) were themselves simple
    tested: int
    lams: list


def simple_dimensions(alg: LieAlgebra, chi: Character, budget: int = DEFAULT_BUDGET,
                      seed: int = 0, limit: Optional[int] = None) -> SweepResult:
    """Heads of all baby Vermas Z_chi(lam) over the fixed weight enumeration."""
    why = feasibility(alg, chi, budget)
    if why:
        raise InfeasibleError(why)
    lams = compatible_weights(chi)
    if limit is not None:
        lams = lams[:limit]
    dims, simple, texts = [], 0, []
    for lam in lams:
        Z = build_baby_verma(alg, chi, lam)
        v = is_simple(Z, seed)
        if v.status == "simple":
            simple += 1
            dims.append(Z.dim)
        else:
            dims.append(simple_head(Z, seed).dim)
        texts.append(Z.lam_text())
    return SweepResult(dims, simple, len(lams), texts)


# --- left-regular cross-check for sl_2 --------------------------------------

def _monomial_images(M: RepModule, basis) -> np.ndarray:
    """K-rank witnesses: for each reduced monomial u, k rows holding theta^t rho(u).

    Column t of a k x k companion block is theta^t times the K-entry, so the
    GF(p)-span of these rows is k times the K-span of the images.
    """
    p, k = M.p, M.k
    mats = [M.dense(i) for i in range(M.alg.n)]
    cache = {(0,) * M.alg.n: np.eye(M.gdim, dtype=np.int64)}

    def mono(m):
        if m in cache:
            return cache[m]
        j = next(i for i, e in enumerate(m) if e)
        rest = list(m)
        rest[j] -= 1
        cache[m] = fields.matmul(mats[j], mono(tuple(rest)), p)
        return cache[m]

    return np.array([mono(m)[:, t::k].ravel() for m in basis for t in range(k)],
                    dtype=np.int64)


def regular_crosscheck(chi: Character, seed: int = 0) -> dict:
    """Compare U_chi with the baby Vermas.

    Semisimple type: the joint image in the product of End_K(Z(lam)) must be
    injective, so U_chi (x) K is the sum of p matrix algebras of size p.
    Otherwise: chop the left-regular module into composition factors; every
    simple module is a quotient of U_chi, hence among them.
    """
    alg = chi.alg
    p = alg.p
    basis, Lmats = left_regular(chi)
    if chi.is_semisimple_type():
        mods = [build_baby_verma(alg, chi, lam) for lam in compatible_weights(chi)]
        k = mods[0].k
        images = [_monomial_images(Z, basis) for Z in mods]
        r = fields.rank(np.concatenate(images, axis=1), p) // k
        return {"method": "joint image rank", "rank": r, "expected": len(basis),
                "ok": r == len(basis), "factor_dims": [p] * p if r == len(basis) else None}
    R = make_module(alg, chi, Lmats)
    dims = composition_factors(R, seed)
    return {"method": "composition factors of the regular module", "factor_dims": dims,
            "ok": sum(dims) == len(basis), "rank": None, "expected": len(basis)}


__all__ = [
    "ExtensionField", "RepModule", "Verdict", "SweepResult", "ModuleError", "InfeasibleError",
    "build_baby_verma", "compatible_weights", "spin", "invariants", "is_simple", "quotient",
    "submodule", "simple_head", "composition_factors", "simple_dimensions",
    "regular_crosscheck", "verify_module", "bracket_failures", "chi_law_failures",
    "make_module", "feasibility", "splitting_degree", "reduced_basis",
]
