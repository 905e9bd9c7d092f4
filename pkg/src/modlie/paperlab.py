"""Named elements and families in U(L), and the checks run on them.

Elements: g_a = x_a^(p-1) - x_-a, w_a = (h_a + 1)^2 + 4 x_-a x_a, the
Cartan forms B_i, and the A_beta tables for four cases:

* ``A-semisimple``      type A, chi(h_a) != 0, a = e1-e2
* ``C-short-nilpotent`` type C, chi(x_a) != 0, a = e1-e2
* ``C-long-nilpotent``  type C, chi(x_a) != 0, a = 2e1
* ``C-semisimple``      type C, chi(h_a) != 0, a = e1-e2

Each table entry is a prefix (powers of g_a, of root vectors, or a reference
to another entry) times an optional parenthesis c_beta + sum of (+-) coef *
monomial.  Free signs and constants are fixed by ``resolve_signs_constants``.
Entries that needed a repair carry a ``note``; the list of repairs is the
``REPAIRS`` table below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
import scipy.sparse as sp

from . import fields
from .chevalley import LieAlgebra
from .pbw import UEAElement, commutator, product, symbol, symbol_multiply
from .repmod import InfeasibleError, RepModule
from .roots import RootSystemError, cartan_integer, neg

CASES = ("A-semisimple", "C-short-nilpotent", "C-long-nilpotent", "C-semisimple")


class LabError(ValueError):
    pass


class ResolutionError(LabError):
    """No admissible sign/constant assignment for a named element."""

    def __init__(self, root_label: str, why: str):
        super().__init__(f"A_{root_label}: {why}")
        self.root_label = root_label


# --- small element builders ------------------------------------------------

def _coef(c, p: int) -> int:
    c = Fraction(c)
    return c.numerator * fields.inv(c.denominator, p) % p


def x_elem(alg: LieAlgebra, root, power: int = 1) -> UEAElement:
    return UEAElement.gen(alg, alg.x(tuple(root)), power)


def h_elem(alg: LieAlgebra, root) -> UEAElement:
    """h_root = [x_root, x_-root] as a degree-one element."""
    return UEAElement.from_vector(alg, alg.coroot_vector(tuple(root)))


def one(alg) -> UEAElement:
    return UEAElement.scalar(alg, 1)


@dataclass
class GAlpha:
    alpha: tuple
    element: UEAElement


@dataclass
class WAlpha:
    alpha: tuple
    element: UEAElement


def make_g(alg: LieAlgebra, alpha) -> UEAElement:
    alpha = tuple(alpha)
    if not alg.rs.is_root(alpha):
        raise RootSystemError(f"{alpha} is not a root of {alg.rs.name}")
    return x_elem(alg, alpha, alg.p - 1) - x_elem(alg, neg(alpha))


def make_w(alg: LieAlgebra, alpha, four=4) -> UEAElement:
    alpha = tuple(alpha)
    if not alg.rs.is_root(alpha):
        raise RootSystemError(f"{alpha} is not a root of {alg.rs.name}")
    h1 = h_elem(alg, alpha) + 1
    return h1 * h1 + (x_elem(alg, neg(alpha)) * x_elem(alg, alpha)).scale(four)


def make_g_w(alg: LieAlgebra, alpha):
    g, w = GAlpha(tuple(alpha), make_g(alg, alpha)), WAlpha(tuple(alpha), make_w(alg, alpha))
    if len(g.element.terms) != 2:
        raise LabError("g_a must have exactly two PBW terms")
    return g, w


def check_w_central(alg: LieAlgebra, alpha, w: Optional[UEAElement] = None,
                    others=()) -> dict:
    """Commutators of w_a with x_a, x_-a, h_a (and optionally other roots)."""
    alpha = tuple(alpha)
    w = make_w(alg, alpha) if w is None else w
    triple = {"x_a": x_elem(alg, alpha), "x_-a": x_elem(alg, neg(alpha)),
              "h_a": h_elem(alg, alpha)}
    res = {name: commutator(w, u) for name, u in triple.items()}
    out = {"pass": all(not c for c in res.values()),
           "nonzero": [name for name, c in res.items() if c]}
    extra = {}
    for beta in others:
        extra[alg.rs.label(beta)] = bool(commutator(w, x_elem(alg, beta)))
    out["outside_triple_nonzero"] = extra
    return out


# --- images in modules -------------------------------------------------------

def _spmod(A, p) -> sp.csr_matrix:
    A = sp.csr_matrix(A, dtype=np.int64)
    A.data %= p
    A.eliminate_zeros()
    return A


def element_image(u: UEAElement, M: RepModule) -> sp.csr_matrix:
    """rho(u) as a sparse GF(p) matrix; monomial x_0^e0 x_1^e1 ... acts left to right."""
    p = M.p
    cache = M.__dict__.setdefault("_powers", {})

    def power(j, e):
        key = (j, e)
        if key not in cache:
            cache[key] = (sp.identity(M.gdim, dtype=np.int64, format="csr") if e == 0
                          else _spmod(power(j, e - 1) @ M.mats[j], p))
        return cache[key]

    out = sp.csr_matrix((M.gdim, M.gdim), dtype=np.int64)
    for m, c in u.terms.items():
        A = None
        for j, e in enumerate(m):
            if e:
                A = power(j, e) if A is None else _spmod(A @ power(j, e), p)
        if A is None:
            A = power(0, 0)
        out = _spmod(out + c * A, p)
    return out


def factors_image(factors, M: RepModule) -> sp.csr_matrix:
    if isinstance(factors, UEAElement):
        factors = [factors]
    out = sp.identity(M.gdim, dtype=np.int64, format="csr")
    for f in factors:
        out = _spmod(out @ element_image(f, M), M.p)
    return out


def image_of(factors, M: RepModule) -> np.ndarray:
    return factors_image(factors, M).toarray()


def invertible(A, M: RepModule) -> bool:
    """Full rank over GF(p), blockwise when A respects the weight grading."""
    p = M.p
    S = sp.coo_matrix(A)
    if M.grading is not None:
        labs = M.grading
        nz = S.data % p != 0
        if not np.any(labs[S.row[nz]] != labs[S.col[nz]]):
            S = S.tocsr()
            for g in np.unique(labs):
                idx = np.flatnonzero(labs == g)
                if fields.rank(S[idx][:, idx].toarray(), p) < idx.size:
                    return False
            return True
    return fields.rank(S.toarray(), p) == S.shape[0]


def k_scalar(A: np.ndarray, M: RepModule):
    """The K-scalar c with A = c * I, or None."""
    p, k = M.p, M.k
    c = A[:k, 0] % p
    block = M.field.block(c)
    target = np.kron(np.eye(M.dim, dtype=np.int64), block) % p
    return c if np.array_equal(A % p, target) else None


def k_rank(images, M: RepModule) -> int:
    """Rank over K of a list of K-linear operators given as GF(p) matrices."""
    k = M.k
    rows = []
    for A in images:
        for t in range(k):
            rows.append(np.asarray(A)[:, t::k].ravel())
    r = fields.rank(np.array(rows, dtype=np.int64), M.p)
    return r // k


# --- g identities ------------------------------------------------------------

def check_g_identities(alg: LieAlgebra, alpha, M: RepModule) -> dict:
    """Weight of g_a, invertibility of its image, g^p scalar, h-shift."""
    alpha = tuple(alpha)
    chi = M.chi
    if chi.values[alg.x(alpha)] or chi.values[alg.x(neg(alpha))]:
        raise LabError("g-identities are stated for chi(x_a) = chi(x_-a) = 0")
    p = alg.p
    g = make_g(alg, alpha)
    h = h_elem(alg, alpha)
    weight = commutator(h, g) + g.scale(2)
    G = image_of(g, M)
    H = image_of(h, M)
    inv_ok = invertible(G, M)
    Gp = fields.matpow(G, p, p)
    c = k_scalar(Gp, M)
    lhs = fields.matmul(G, H, p)
    rhs = fields.matmul((H + 2 * np.eye(M.gdim, dtype=np.int64)) % p, G, p)
    return {
        "weight": not weight,
        "invertible": bool(inv_ok),
        "power_scalar": c is not None,
        "power_value": M.field.as_text(c) if c is not None else None,
        "conjugation_shift": bool(np.array_equal(lhs, rhs)),
    }


# --- Cartan forms ------------------------------------------------------------

@dataclass
class BForms:
    alpha: tuple
    ts: list
    rows: np.ndarray
    elements: list
    seed: int

    @property
    def count(self):
        return len(self.ts)


def build_B_forms(alg: LieAlgebra, alpha, m: Optional[int] = None, seed: int = 0,
                  count: Optional[int] = None) -> BForms:
    """Rows b_i = (1, t_i, ..., t_i^(l-1)) for distinct t_i with a(B_i) != 0.

    ``count`` rows (default 2m) are taken from a seeded permutation of GF(p).
    """
    p, l = alg.p, alg.rank
    if count is None:
        count = 2 * (alg.m if m is None else m)
    alpha = tuple(alpha)
    pair = [cartan_integer(b, alpha) for b in alg.rs.base]   # a(h_j)
    order = np.random.default_rng(seed).permutation(p)
    ts, rows = [], []
    for t in order:
        row = [pow(int(t), e, p) for e in range(l)]
        if sum(r * a for r, a in zip(row, pair)) % p == 0:
            continue
        ts.append(int(t))
        rows.append(row)
        if len(ts) == count:
            break
    if len(ts) < count:
        raise LabError(f"only {len(ts)} admissible rows over GF({p}); {count} requested")
    cor = alg.coroot_indices()
    elems = []
    for row in rows:
        v = np.zeros(alg.n, dtype=np.int64)
        v[cor] = row
        elems.append(UEAElement.from_vector(alg, v))
    return BForms(alpha, ts, np.array(rows, dtype=np.int64).reshape(len(rows), l), elems, seed)


def check_B_forms(alg: LieAlgebra, forms: BForms) -> dict:
    """General position of the rows and a(B_i) != 0, checked exhaustively."""
    p, l = alg.p, alg.rank
    rows = forms.rows
    sub_ok = all(fields.rank(rows[list(s)], p) == l
                 for s in itertools.combinations(range(len(rows)), l)) if len(rows) >= l else True
    curve = np.array([[pow(t, e, p) for e in range(l + 1)] for t in forms.ts], dtype=np.int64)
    curve_ok = all(fields.rank(curve[list(s)], p) == l + 1
                   for s in itertools.combinations(range(len(rows)), l + 1))
    x = x_elem(alg, forms.alpha)
    noncomm = all(bool(commutator(x, B)) for B in forms.elements)
    return {"l_subsets_independent": sub_ok, "curve_points_general": curve_ok,
            "alpha_nonzero": noncomm}


# --- the transcription table ----------------------------------------------

@dataclass
class Term:
    coef: Fraction
    signed: bool
    word: tuple          # (("x", root) | ("h+1", root) | ("h", root), ...)


@dataclass
class Paren:
    const: str
    terms: list


@dataclass
class Entry:
    root: tuple
    prefixes: list                  # alternatives; each a list of prefix factors
    paren: Optional[Paren] = None
    note: str = ""
    other: bool = False             # built by the "x_b^2 or x_b^3" rule


@dataclass
class Resolution:
    root: tuple
    prefix_index: int
    signs: tuple
    level: str                      # formal | image | factor | none
    constant: Optional[int]
    constant_status: str            # invertible | unpinned | not-applicable | none
    factors: list                   # UEAElement factors whose product is A_beta
    nonzero_image: Optional[bool] = None
    detail: str = ""


REPAIRS = [
    ("C-short-nilpotent/C-semisimple", "A_{-(e1+-e3)}",
     "prefix written x_{-(+-e3)} is not a root vector; candidates x_{-+2e3} then x_{+-2e3}"),
    ("C-short-nilpotent/C-semisimple", "B_i",
     "coroot written h_{e_l} (or h_{e_2l}); read as h_{2e_l}, the simple coroot"),
    ("A-semisimple", "A_{ej-e1}", "constant written c_{eJ-e1}; read as c_{ej-e1}"),
    ("C-long-nilpotent", "A_{-e!+-ej}", "index written e_!; read as e_1"),
    ("A-semisimple", "A_{e2-ej}, A_{ej-e2}",
     "general-j prefixes x_{e4-ej}, x_{ej-e4} used for j >= 5; j = 4 has its own entries"),
    ("all", "family order", "factors elided by dots are the remaining root pairs in canonical order"),
]


def _r(dim, *terms):
    v = [0] * dim
    for s, i in terms:
        v[i - 1] += s
    return tuple(v)


def _pt(dim, pairs, signed_flags=None, coefs=None):
    """Parenthesis terms x_a x_b from a list of (a, b) root pairs."""
    out = []
    for idx, (a, b) in enumerate(pairs):
        c = coefs[idx] if coefs else 1
        s = signed_flags[idx] if signed_flags else idx > 0
        out.append(Term(Fraction(c), s, (("x", a), ("x", b))))
    return out


def _casimir_like(alpha, const, coef, order):
    """c + (h_a + 1)^2 + coef * (x_-a x_a or x_a x_-a)."""
    a, na = alpha, neg(alpha)
    word = (("x", na), ("x", a)) if order == "fe" else (("x", a), ("x", na))
    return Paren(const, [Term(Fraction(1), False, (("h+1", a), ("h+1", a))),
                         Term(Fraction(coef), False, word)])


def _table_A(alg: LieAlgebra) -> dict:
    l = alg.rank
    d = l + 1
    e = lambda i, j: _r(d, (1, i), (-1, j))                      # noqa: E731
    a = e(1, 2)
    T = {}
    T[a] = Entry(a, [[("g", 1)]])
    T[neg(a)] = Entry(neg(a), [[]], _casimir_like(a, f"c({alg.rs.label(neg(a))})",
                                                  Fraction(1, 4), "fe"))
    if l == 1:
        return T

    def par(beta, pairs):
        return Paren(f"c({alg.rs.label(beta)})", _pt(d, pairs))

    T[e(1, 3)] = Entry(e(1, 3), [[("g", 2)]],
                       par(e(1, 3), [(e(2, 3), e(3, 2)), (e(1, 3), e(3, 1))]))
    alts = [[("g", 3)]] + ([[("x", e(3, 4), 1)]] if l >= 3 else [])
    T[e(3, 1)] = Entry(e(3, 1), alts, par(e(3, 1), [(e(3, 2), e(2, 3)), (e(3, 1), e(1, 3))]))
    T[e(2, 3)] = Entry(e(2, 3), [[("g", 4)]],
                       par(e(2, 3), [(e(2, 3), e(3, 2)), (e(1, 3), e(3, 1))]))
    T[e(3, 2)] = Entry(e(3, 2), [[("g", 5)]],
                       par(e(3, 2), [(e(2, 3), e(3, 2)), (e(1, 3), e(3, 1))]))
    if l >= 3:
        T[e(2, 4)] = Entry(e(2, 4), [[("x", e(3, 4), 2)]],
                           par(e(2, 4), [(e(2, 4), e(4, 2)), (e(1, 4), e(4, 1))]))
        T[e(4, 2)] = Entry(e(4, 2), [[("x", e(4, 3), 1)]],
                           par(e(4, 2), [(e(4, 2), e(2, 4)), (e(4, 1), e(1, 4))]))
        for j in range(4, d + 1):
            T[e(1, j)] = Entry(e(1, j), [[("x", e(3, j), 2)]],
                               par(e(1, j), [(e(1, j), e(j, 1)), (e(2, j), e(j, 2))]))
            T[e(j, 1)] = Entry(e(j, 1), [[("x", e(j, 3), 2)]],
                               par(e(j, 1), [(e(1, j), e(j, 1)), (e(2, j), e(j, 2))]),
                               note="constant subscript repaired")
        for j in range(5, d + 1):
            T[e(2, j)] = Entry(e(2, j), [[("x", e(4, j), 1)]],
                               par(e(2, j), [(e(2, j), e(j, 2)), (e(1, j), e(j, 1))]))
            T[e(j, 2)] = Entry(e(j, 2), [[("x", e(j, 4), 1)]],
                               par(e(j, 2), [(e(j, 2), e(2, j)), (e(j, 1), e(1, j))]))
    return T


def _table_C(alg: LieAlgebra, case: str) -> dict:
    l = alg.rank
    if l < 3:
        raise LabError("the C-type tables need l >= 3")
    E = lambda *t: _r(l, *t)                                        # noqa: E731
    T = {}
    lab = alg.rs.label

    def par(beta, pairs, signed=None, coefs=None, const_root=None):
        return Paren(f"c({lab(const_root or beta)})", _pt(l, pairs, signed, coefs))

    def pm_pairs(i, s, k):
        """(x_{ei+s ek}, x_{-(ei+s ek)})"""
        r = E((1, i), (s, k))
        return (r, neg(r))

    if case == "C-long-nilpotent":
        a = E((2, 1))
        T[a] = Entry(a, [[("x", a, 1)]])
        T[neg(a)] = Entry(neg(a), [[]], _casimir_like(a, f"c({lab(neg(a))})", 4, "fe"))
        for s in (1, -1):
            b = E((-1, 1), (s, 2))
            pre = E((-1, 3), (s, 2))
            T[b] = Entry(b, [[("x", pre, 1)]],
                         par(b, [(E((-1, 1), (s, 2)), E((1, 1), (-s, 2))),
                                 (E((1, 1), (s, 2)), E((-1, 1), (-s, 2)))], signed=[True, True]))
            for j in range(3, l + 1):
                b = E((-1, 1), (s, j))
                pre = E((-1, 2), (s, j))
                T[b] = Entry(b, [[("x", pre, 1)]],
                             par(b, [(E((s, j), (-1, 1)), E((1, 1), (-s, j))),
                                     (E((1, 1), (s, j)), E((-1, 1), (-s, j)))]),
                             note="index e_! read as e_1")
        return T

    a = E((1, 1), (-1, 2))
    nilp = case == "C-short-nilpotent"
    if nilp:
        T[a] = Entry(a, [[("x", a, 1)]])
        T[neg(a)] = Entry(neg(a), [[]], _casimir_like(a, f"c({lab(neg(a))})", 4, "ef"))
    else:
        T[a] = Entry(a, [[("g", 1)]])
        T[neg(a)] = Entry(neg(a), [[]], _casimir_like(a, f"c({lab(neg(a))})", 4, "fe"))
    for s in (1, -1):
        b = E((1, 2), (s, 3))
        T[b] = Entry(b, [[("x", E((2 * s, 3)), 1)]],
                     par(b, [pm_pairs(2, s, 3), pm_pairs(1, s, 3)]))
        for k in range(4, l + 1):
            b = E((1, 2), (s, k))
            T[b] = Entry(b, [[("x", E((1, 3), (s, k)), 1)]],
                         par(b, [pm_pairs(2, s, k), pm_pairs(1, s, k)]))
            nb = neg(E((1, 1), (s, k)))
            T[nb] = Entry(nb, [[("x", neg(E((1, 3), (s, k))), 1)]],
                          par(nb, [pm_pairs(2, s, k), pm_pairs(1, s, k)]))
        nb = neg(E((1, 1), (s, 3)))
        T[nb] = Entry(nb, [[("x", E((-2 * s, 3)), 1)], [("x", E((2 * s, 3)), 1)]],
                      par(nb, [pm_pairs(2, s, 3), pm_pairs(1, s, 3)],
                          const_root=neg(E((1, 2), (s, 3)))),
                      note="prefix x_{-(+-e3)} repaired to x_{-+2e3} (first) or x_{+-2e3}")
    p12, m12 = E((1, 1), (1, 2)), E((-1, 1), (-1, 2))
    t1, m1, t2, m2 = E((2, 1)), E((-2, 1)), E((2, 2)), E((-2, 2))
    if nilp:
        T[p12] = Entry(p12, [[("x", a, 2)]],
                       par(p12, [(p12, m12), (t1, m1), (t2, m2)], coefs=[3, 2, 2]))
        T[t2] = Entry(t2, [[("x", E((2, 3)), 2)]],
                      par(t2, [(t2, m2), (p12, m12), (t1, m1)], signed=[False, True, False],
                          coefs=[2, 3, 2]))
        T[m1] = Entry(m1, [[("x", E((-2, 3)), 2)]],
                      par(m1, [(m1, t1), (m12, p12), (m2, t2)], coefs=[2, 3, 2]))
    else:
        h, t = Fraction(1, 2), Fraction(1, 3)
        pp = [(p12, m12), (t1, m1), (t2, m2)]
        T[p12] = Entry(p12, [[("g", 2)]], par(p12, pp, coefs=[h, t, t]))
        T[m12] = Entry(m12, [[("g", 3)]], par(m12, pp, coefs=[h, t, t]))
        q = [(t2, m2), (p12, m12), (t1, m1)]
        T[t2] = Entry(t2, [[("g", 6)]], par(t2, q, signed=[False, True, False], coefs=[t, h, t]))
        T[m2] = Entry(m2, [[("g", 1), ("A", neg(a))]],
                      par(m2, q, signed=[False, True, False], coefs=[t, h, t]))
        r = [(m1, t1), (m12, p12), (m2, t2)]
        T[t1] = Entry(t1, [[("g", 4)]], par(t1, r, coefs=[t, h, t]))
        T[m1] = Entry(m1, [[("g", 5)]], par(m1, r, coefs=[t, h, t]))
    tl, ml = E((2, l)), E((-2, l))
    T[tl] = Entry(tl, [[("x", tl, 2)]], note="" if nilp or l > 2 else "stated for l > 2")
    T[ml] = Entry(ml, [[("x", ml, 2)]])
    return T


def transcription(alg: LieAlgebra, case: str) -> dict:
    if case not in CASES:
        raise LabError(f"unknown case {case!r}; expected one of {CASES}")
    fam = alg.rs.family
    if (case == "A-semisimple") != (fam == "A"):
        raise LabError(f"case {case} does not apply to type {fam}")
    T = _table_A(alg) if fam == "A" else _table_C(alg, case)
    for r in list(T):
        if not alg.rs.is_root(r):
            raise LabError(f"table entry {r} is not a root")
    return T


def distinguished_root(alg: LieAlgebra, case: str) -> tuple:
    l = alg.rank
    if case == "C-long-nilpotent":
        return _r(l, (2, 1))
    d = l + 1 if alg.rs.family == "A" else l
    return _r(d, (1, 1), (-1, 2))


# --- families ---------------------------------------------------------------

@dataclass
class AFamily:
    alg: LieAlgebra
    case: str
    alpha: tuple
    entries: dict
    resolved: dict = field(default_factory=dict)
    findings: list = field(default_factory=list)
    module: Optional[RepModule] = None

    def label(self, r) -> str:
        return self.alg.rs.label(r)

    def is_resolved(self) -> bool:
        return set(self.resolved) == set(self.entries)

    def element(self, r) -> UEAElement:
        res = self.resolved[r]
        return product(res.factors, self.alg)


def build_A_family(alg: LieAlgebra, case: str, alpha=None, M: Optional[RepModule] = None) -> AFamily:
    """All A_beta of a case; roots without a table entry get the x_b^2 / x_b^3 rule."""
    a = distinguished_root(alg, case) if alpha is None else tuple(alpha)
    if a != distinguished_root(alg, case):
        raise LabError("the tables are written for the distinguished root of each case; "
                       "conjugate by the Weyl group first")
    T = transcription(alg, case)
    for r in alg.rs.roots:
        if r not in T:
            T[r] = Entry(r, [[("x", r, 2)], [("x", r, 3)]], other=True)
    ordered = {r: T[r] for r in alg.rs.roots}
    return AFamily(alg, case, a, ordered, module=M)


def _word_element(alg, word) -> UEAElement:
    out = one(alg)
    for kind, r in word:
        if kind == "x":
            f = x_elem(alg, r)
        elif kind == "h":
            f = h_elem(alg, r)
        else:
            f = h_elem(alg, r) + 1
        out = out * f
    return out


def paren_element(alg, paren: Paren, signs, c) -> UEAElement:
    p = alg.p
    out = UEAElement.scalar(alg, c)
    it = iter(signs)
    for t in paren.terms:
        s = next(it) if t.signed else 1
        out = out + _word_element(alg, t.word).scale(s * _coef(t.coef, p))
    return out


def _sign_slots(paren: Optional[Paren]) -> int:
    return sum(t.signed for t in paren.terms) if paren else 0


def _prefix_factors(fam: AFamily, pre) -> list:
    alg = fam.alg
    out = []
    for item in pre:
        if item[0] == "g":
            out.extend([make_g(alg, fam.alpha)] * item[1])
        elif item[0] == "x":
            out.append(x_elem(alg, item[1], item[2]))
        elif item[0] == "A":
            if item[1] not in fam.resolved:
                raise LabError(f"A_{fam.label(item[1])} must be resolved first")
            out.extend(fam.resolved[item[1]].factors)
    return out


def formal_commutes(factors, x: UEAElement, max_degree: int = 40) -> Optional[bool]:
    """Does the product of ``factors`` commute with x in U(L)?

    Uses that U(L) is a domain whose associated graded is a polynomial ring:
    the top symbol of [x, F1...Fr] is the sum over i of the symbols of
    F1..[x,Fi]..Fr of maximal degree; if that sum is nonzero the commutator
    is nonzero.  Otherwise the product is expanded (``None`` when over
    ``max_degree``).
    """
    cs = [commutator(x, f) for f in factors]
    if not any(cs):
        return True
    syms = [symbol(f) for f in factors]
    best, S = -1, None
    for i, c in enumerate(cs):
        if not c:
            continue
        deg = c.degree + sum(f.degree for j, f in enumerate(factors) if j != i)
        term = symbol(c)
        for j, s in enumerate(syms):
            if j != i:
                term = symbol_multiply(term, s)
        if deg > best:
            best, S = deg, term
        elif deg == best:
            S = S + term
    if S:
        return False
    if sum(max(f.degree, 0) for f in factors) > max_degree:
        return None
    return not commutator(x, product(factors, x.alg))


def _image_commutes(factors, x: UEAElement, M: RepModule) -> bool:
    A = factors_image(factors, M)
    X = element_image(x, M)
    return _spmod(A @ X - X @ A, M.p).nnz == 0


def _paren_invertible(fam, paren, signs, c, M) -> bool:
    return invertible(element_image(paren_element(fam.alg, paren, signs, c), M), M)


def resolve_signs_constants(fam: AFamily, alpha=None, M: Optional[RepModule] = None,
                            strict: bool = False) -> AFamily:
    """Fix signs (commutation with x_a) and constants (invertibility in M).

    Levels, tried in order: the whole element commutes in U(L) ("formal");
    its image commutes in M ("image"); only the parenthesis commutes in U(L)
    ("factor", recorded as a finding); nothing commutes ("none", finding).
    Constants are the least c in GF(p) making the parenthesis (or the
    Casimir-type element) invertible in M; without a module they stay
    unpinned at c = 1.  With ``strict`` any finding raises ResolutionError.
    """
    if alpha is not None and tuple(alpha) != fam.alpha:
        raise LabError("resolution is against the family's distinguished root")
    M = M if M is not None else fam.module
    if M is not None:
        fam.module = M
    alg = fam.alg
    p = alg.p
    x = x_elem(alg, fam.alpha)
    order = sorted(fam.entries, key=lambda r: any(it[0] == "A" for pre in fam.entries[r].prefixes
                                                  for it in pre))
    for r in order:
        ent = fam.entries[r]
        paren = ent.paren
        attach = None
        if ent.other and commutator(x, x_elem(alg, r)):
            src = fam.entries.get(neg(r))
            if src is not None and src.paren is not None:
                attach = src.paren
        use_paren = paren or attach
        slots = _sign_slots(use_paren)
        cands = [(i, s) for i in range(len(ent.prefixes))
                 for s in itertools.product((1, -1), repeat=slots)]
        zero_paren = lambda s: paren_element(alg, use_paren, s, 0) if use_paren else None  # noqa: E731

        def factors_for(i, s, c=0):
            fs = _prefix_factors(fam, ent.prefixes[i])
            if use_paren:
                fs = fs + [paren_element(alg, use_paren, s, c)]
            return fs or [one(alg)]

        level, choice, detail = "none", cands[0], ""
        undecided = False
        for i, s in cands:
            v = formal_commutes(factors_for(i, s), x)
            if v:
                level, choice = "formal", (i, s)
                break
            undecided |= v is None
        if level == "none" and M is not None:
            for i, s in cands:
                if _image_commutes(factors_for(i, s), x, M):
                    level, choice = "image", (i, s)
                    break
        if level == "none" and use_paren:
            for i, s in cands:
                if not commutator(x, zero_paren(s)):
                    level, choice = "factor", (i, s)
                    break
        if undecided and level != "formal":
            detail = "some formal checks exceeded the degree budget"
        i, s = choice
        const, cstat = None, "not-applicable"
        if use_paren:
            if M is not None:
                cstat = "none"
                for c in range(p):
                    if _paren_invertible(fam, use_paren, s, c, M):
                        const, cstat = c, "invertible"
                        break
            else:
                const, cstat = 1, "unpinned"
        fs = factors_for(i, s, const if const is not None else 0)
        nz = None
        if M is not None:
            nz = factors_image(fs, M).nnz > 0
        res = Resolution(r, i, tuple(s), level, const, cstat, fs, nz, detail)
        fam.resolved[r] = res
        problems = []
        if level in ("factor", "none"):
            problems.append(f"no sign choice commutes with x_a at element level ({level})")
        if cstat == "none":
            problems.append("no constant in GF(p) makes the parenthesis invertible")
        if nz is False:
            problems.append("image is zero in the pinned module")
        for why in problems:
            fam.findings.append({"element": f"A_{fam.label(r)}", "finding": why})
            if strict:
                raise ResolutionError(fam.label(r), why)
    return fam


# --- the product family -----------------------------------------------------

def family_order(fam: AFamily) -> list:
    """Roots in the order of the factors of the product family."""
    alg = fam.alg
    rs = alg.rs
    l = rs.rank
    out = []
    if fam.case == "A-semisimple":
        d = l + 1
        e = lambda i, j: _r(d, (1, i), (-1, j))                   # noqa: E731
        out = [e(1, 2), e(2, 1)]
        if l >= 2:
            out += [e(1, j) for j in range(3, d + 1)] + [e(j, 1) for j in range(3, d + 1)]
            out += [e(2, j) for j in range(3, d + 1)] + [e(j, 2) for j in range(3, d + 1)]
    else:
        E = lambda *t: _r(l, *t)                                    # noqa: E731
        if fam.case == "C-long-nilpotent":
            out = [E((2, 1)), E((-2, 1))]
        for i in range(1, l):
            b = E((1, i), (-1, i + 1))
            out += [b, neg(b)]
        out += [E((2, l)), E((-2, l))]
    seen = set()
    out = [r for r in out if not (r in seen or seen.add(r))]
    for b in rs.positive:
        for r in (b, neg(b)):
            if r not in seen:
                seen.add(r)
                out.append(r)
    return out


@dataclass
class BasisFamily:
    fam: AFamily
    roots: list
    factors: list
    cap: int

    @property
    def size(self) -> int:
        return (self.cap + 1) ** len(self.factors)

    def exponents(self):
        return itertools.product(range(self.cap + 1), repeat=len(self.factors))


def build_basis_family(fam: AFamily, forms: BForms, cap: int,
                       n_factors: Optional[int] = None) -> BasisFamily:
    if not fam.is_resolved():
        raise LabError("family has unresolved elements")
    p = fam.alg.p
    if not 0 <= cap <= p - 1:
        raise LabError(f"cap must lie in [0, {p - 1}]")
    roots = family_order(fam)
    if n_factors is not None:
        roots = roots[:n_factors]
    if forms.count < len(roots):
        raise LabError(f"{len(roots)} factors need as many Cartan forms, got {forms.count}")
    factors = [forms.elements[j] + fam.element(r) for j, r in enumerate(roots)]
    return BasisFamily(fam, roots, factors, cap)


IMAGE_CELL_BUDGET = 20_000_000
EXACT_DEGREE_LIMIT = 30          # default degree cap for exact expansion


def _products(bf: BasisFamily, budget: int):
    if bf.size > budget:
        raise InfeasibleError(f"family of {bf.size} products exceeds the budget {budget}")
    return list(bf.exponents())


def check_independence(bf: BasisFamily, mode: str = "formal", degree_cap: Optional[int] = None,
                       M: Optional[RepModule] = None, budget: int = 4096, seed: int = 0) -> dict:
    """Rank of the product family.

    ``image``: K-rank of the images in M, against the family size and
    dim_K End(M).  ``formal``: exact PBW expansion when ``degree_cap`` covers
    the total degree; otherwise sound lower bounds: the top-degree symbols
    grouped by degree (a dependence among products forces one among the
    symbols of its top degree), and, when a module is available, the rank of
    rho(u) v for random probe vectors v.  ``exact`` says whether the reported
    rank is the true rank.
    """
    alg = bf.fam.alg
    p = alg.p
    exps = _products(bf, budget)
    if mode == "image":
        if M is None:
            raise LabError("image mode needs a module")
        cells = len(exps) * M.k * M.gdim * M.dim
        if cells > IMAGE_CELL_BUDGET:
            raise InfeasibleError(f"image rank needs a {len(exps) * M.k} x {M.gdim * M.dim} "
                                  f"matrix, over the budget of {IMAGE_CELL_BUDGET} entries")
        F = [element_image(f, M) for f in bf.factors]
        imgs = []
        for ex in exps:
            A = sp.identity(M.gdim, dtype=np.int64, format="csr")
            for f, e in zip(F, ex):
                for _ in range(e):
                    A = _spmod(A @ f, p)
            imgs.append(A.toarray())
        r = k_rank(imgs, M)
        return {"mode": "image", "rank": r, "size": len(exps), "end_dim": M.dim ** 2,
                "full": r == len(exps), "exact": True}
    degs = [f.degree for f in bf.factors]
    top = max((sum(d * e for d, e in zip(degs, ex)) for ex in exps), default=0)
    if (EXACT_DEGREE_LIMIT if degree_cap is None else degree_cap) >= top:
        elems = []
        for ex in exps:
            fs = [f for f, e in zip(bf.factors, ex) for _ in range(e)]
            elems.append(product(fs, alg))
        r = _coef_rank(elems, p)
        return {"mode": "formal-exact", "rank": r, "size": len(exps), "full": r == len(exps),
                "exact": True, "total_degree": top}
    syms = [symbol(f) for f in bf.factors]
    by_deg: dict = {}
    for ex in exps:
        s = one(alg)
        for sy, e in zip(syms, ex):
            for _ in range(e):
                s = symbol_multiply(s, sy)
        by_deg.setdefault(s.degree, []).append(s)
    r_sym = sum(_coef_rank(v, p) for v in by_deg.values())
    out = {"mode": "formal-bound", "symbol_bound": r_sym, "size": len(exps),
           "total_degree": top, "degree_cap": degree_cap}
    M = M if M is not None else bf.fam.module
    r_probe = None
    if M is not None:
        r_probe = _probe_rank(bf, exps, M, seed)
        out["probe_bound"] = r_probe
    r = max(r_sym, r_probe or 0)
    out.update(rank=r, full=r == len(exps), exact=r == len(exps))
    return out


def _probe_rank(bf: BasisFamily, exps, M: RepModule, seed: int, probes: int = 2) -> int:
    """GF(p)-rank of rho(u) v for seeded random v; a lower bound for the rank of the u."""
    p = M.p
    rng = np.random.default_rng(seed)
    V = rng.integers(0, p, size=(M.gdim, probes)).astype(np.int64)
    F = [element_image(f, M) for f in bf.factors]
    rows = []
    for ex in exps:
        W = V
        for f, e in reversed(list(zip(F, ex))):
            for _ in range(e):
                W = (f @ W) % p
        rows.append(W.T.ravel())
    return fields.rank(np.array(rows, dtype=np.int64), p)


def _coef_rank(elems, p) -> int:
    keys = sorted({m for u in elems for m in u.terms})
    if not keys:
        return 0
    pos = {m: i for i, m in enumerate(keys)}
    A = np.zeros((len(elems), len(keys)), dtype=np.int64)
    for i, u in enumerate(elems):
        for m, c in u.terms.items():
            A[i, pos[m]] = c
    return fields.rank(A, p)
