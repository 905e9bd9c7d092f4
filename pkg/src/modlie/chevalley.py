"""Chevalley bases, integral structure constants and reduction mod p.

Basis order, used everywhere downstream (PBW monomials included):
negative root vectors (in the canonical order of their positive
counterparts), then the simple coroots h_1..h_l, then positive root vectors.

Signs of the structure constants N_{a,b} follow the extraspecial-pair
algorithm with every extraspecial sign equal to +1.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import fields
from .roots import (RootSystem, RootSystemError, add, build_root_system, cartan_integer,
                    inner, neg)

SIGN_CONVENTION = "extraspecial pairs, all signs +1"


class AlgebraError(ValueError):
    pass


def _p_string(rs: RootSystem, a, b) -> int:
    """Largest r with b - r*a a root."""
    r = 0
    while rs.is_root(tuple(y - (r + 1) * x for x, y in zip(a, b))):
        r += 1
    return r


def extraspecial_pairs(rs: RootSystem) -> dict:
    """Map each non-simple positive root to its extraspecial pair."""
    order = {a: i for i, a in enumerate(rs.positive)}
    out = {}
    for xi in rs.positive:
        pairs = [(a, tuple(x - y for x, y in zip(xi, a))) for a in rs.positive]
        pairs = [(a, b) for a, b in pairs if b in order and order[a] < order[b]]
        if pairs:
            out[xi] = min(pairs, key=lambda ab: order[ab[0]])
    return out


def carter_constants(rs: RootSystem) -> dict:
    """N_{a,b} for every pair of roots with a + b a root."""
    pos = set(rs.positive)
    ext = extraspecial_pairs(rs)
    table: dict = {}

    def n2(a):
        return inner(a, a)

    def get(a, b):
        s = add(a, b)
        if not rs.is_root(s):
            return 0
        if a in pos and b in pos:
            return table[(a, b)]
        if a not in pos and b not in pos:
            return -get(neg(a), neg(b))
        if a not in pos:
            return -get(b, a)
        c = neg(s)
        # a > 0 > b and a + b + c = 0
        if c not in pos:
            val = Fraction(n2(c), n2(a)) * get(b, c)
        else:
            val = Fraction(n2(c), n2(b)) * get(c, a)
        assert val.denominator == 1
        return int(val)

    order = {a: i for i, a in enumerate(rs.positive)}
    for xi in sorted(ext, key=rs.height):
        g, d = ext[xi]
        n_gd = _p_string(rs, g, d) + 1
        for a in rs.positive:
            b = tuple(x - y for x, y in zip(xi, a))
            if b not in pos or order[a] >= order[b]:
                continue
            if (a, b) == (g, d):
                val = n_gd
            else:
                t1 = t2 = Fraction(0)
                bg = tuple(x - y for x, y in zip(b, g))
                ag = tuple(x - y for x, y in zip(a, g))
                if rs.is_root(bg):
                    t1 = Fraction(get(b, neg(g)) * get(a, neg(d)), n2(bg))
                if rs.is_root(ag):
                    t2 = Fraction(get(neg(g), a) * get(b, neg(d)), n2(ag))
                v = Fraction(n2(xi), n_gd) * (t1 + t2)
                assert v.denominator == 1, (a, b, v)
                val = int(v)
            table[(a, b)] = val
            table[(b, a)] = -val
    full = {}
    for a in rs.roots:
        for b in rs.roots:
            if rs.is_root(add(a, b)):
                full[(a, b)] = get(a, b)
    return full


@dataclass
class LieAlgebra:
    """Lie algebra given by a structure tensor on an ordered basis.

    ``table[i, j, k]`` is the coefficient of basis element k in [b_i, b_j].
    ``p`` is ``None`` for the integral form.
    """

    rs: RootSystem
    table: np.ndarray
    p: Optional[int] = None
    labels: list = field(default_factory=list)
    basis_roots: list = field(default_factory=list)
    sign_convention: str = SIGN_CONVENTION

    def __post_init__(self):
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.root_index = {r: i for i, r in enumerate(self.basis_roots) if r is not None}

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def m(self) -> int:
        return (self.n - self.rank) // 2

    @property
    def n_neg(self) -> int:
        return len(self.rs.positive)

    def is_coroot(self, i: int) -> bool:
        return self.basis_roots[i] is None

    def coroot_indices(self) -> list:
        return list(range(self.n_neg, self.n_neg + self.rank))

    def negative_indices(self) -> list:
        return list(range(self.n_neg))

    def positive_indices(self) -> list:
        return list(range(self.n_neg + self.rank, self.n))

    def x(self, root) -> int:
        """Basis index of the root vector x_root."""
        try:
            return self.root_index[tuple(root)]
        except KeyError:
            raise RootSystemError(f"{root} is not a root of {self.rs.name}") from None

    def h(self, i: int) -> int:
        """Basis index of the i-th simple coroot (0-based)."""
        return self.n_neg + i

    def coroot_vector(self, root) -> np.ndarray:
        """h_root = [x_root, x_-root] as a coefficient vector on the basis."""
        return self.bracket_vec(self.unit(self.x(root)), self.unit(self.x(neg(tuple(root)))))

    def unit(self, i: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[i] = 1
        return v

    def _red(self, a):
        return a % self.p if self.p else a

    def bracket(self, i: int, j: int) -> np.ndarray:
        return self.table[i, j]

    def bracket_vec(self, u, v) -> np.ndarray:
        out = np.einsum("i,j,ijk->k", np.asarray(u, dtype=np.int64),
                        np.asarray(v, dtype=np.int64), self.table)
        return self._red(out)

    def ad(self, u) -> np.ndarray:
        """Matrix of ad(u) acting on column coefficient vectors."""
        M = np.einsum("i,ijk->kj", np.asarray(u, dtype=np.int64), self.table)
        return self._red(M)

    def p_map_vector(self, i: int) -> np.ndarray:
        """b_i^[p] on the basis: 0 for root vectors, h for coroots."""
        return self.unit(i) if self.is_coroot(i) else np.zeros(self.n, dtype=np.int64)


def _labels(rs: RootSystem):
    labels, broots = [], []
    for a in rs.positive:
        labels.append(f"x({rs.label(neg(a))})")
        broots.append(neg(a))
    for i in range(rs.rank):
        labels.append(f"h{i + 1}")
        broots.append(None)
    for a in rs.positive:
        labels.append(f"x({rs.label(a)})")
        broots.append(a)
    return labels, broots


def structure_constants(rs: RootSystem) -> LieAlgebra:
    """Integral Chevalley basis of the simple Lie algebra of type ``rs``."""
    labels, broots = _labels(rs)
    n = len(labels)
    index = {r: i for i, r in enumerate(broots) if r is not None}
    N = carter_constants(rs)
    T = np.zeros((n, n, n), dtype=np.int64)
    n_neg = len(rs.positive)
    for (a, b), c in N.items():
        T[index[a], index[b], index[add(a, b)]] = c
    for a in rs.roots:
        cc = rs.coroot_coefficients(a)
        for i, c in enumerate(cc):
            T[index[a], index[neg(a)], n_neg + i] = c
        for i, simple in enumerate(rs.base):
            k = cartan_integer(simple, a)
            T[n_neg + i, index[a], index[a]] = k
            T[index[a], n_neg + i, index[a]] = -k
    return LieAlgebra(rs, T, None, labels, broots)


def build_algebra(family: str, l: int, p: Optional[int] = None) -> LieAlgebra:
    alg = structure_constants(build_root_system(family, l))
    return reduce_mod_p(alg, p) if p is not None else alg


def reduce_mod_p(alg: LieAlgebra, p: int) -> LieAlgebra:
    """Reduce an integral Chevalley algebra into GF(p), p >= 7."""
    fields.check_modulus(p)
    if p < 7:
        raise AlgebraError(f"characteristic {p} < 7 is outside the supported range")
    rs = alg.rs
    if rs.family == "A" and (rs.rank + 1) % p == 0:
        warnings.warn(f"p = {p} divides l + 1: sl_{rs.rank + 1} has a center; "
                      "no quotient is taken", stacklevel=2)
    out = LieAlgebra(rs, alg.table % p, p, list(alg.labels), list(alg.basis_roots),
                     alg.sign_convention)
    bad = check_restricted(out)
    if bad:
        raise AlgebraError(f"p-map check failed for {bad}")
    return out


def check_restricted(alg: LieAlgebra) -> list:
    """Basis elements b with ad(b)^p != ad(b^[p])."""
    p = alg.p
    bad = []
    for i in range(alg.n):
        lhs = fields.matpow(alg.ad(alg.unit(i)), p, p)
        rhs = alg.ad(alg.p_map_vector(i)) % p
        if not np.array_equal(lhs, rhs):
            bad.append(alg.labels[i])
    return bad


def jacobi_violations(alg: LieAlgebra) -> list:
    """Triples (i, j, k), i < j < k, on which the Jacobi identity fails."""
    T = alg.table
    J = (np.einsum("jkm,imr->ijkr", T, T) + np.einsum("kim,jmr->ijkr", T, T)
         + np.einsum("ijm,kmr->ijkr", T, T))
    if alg.p:
        J %= alg.p
    bad = np.argwhere(np.any(J != 0, axis=3))
    return sorted({tuple(sorted(map(int, t))) for t in bad if len(set(t)) == 3})


def verify_jacobi(alg: LieAlgebra) -> list:
    """Labelled report of Jacobi violations; empty when the identity holds."""
    return [tuple(alg.labels[i] for i in t) for t in jacobi_violations(alg)]


def check_antisymmetry(alg: LieAlgebra) -> bool:
    T = alg.table
    S = T + T.transpose(1, 0, 2)
    if alg.p:
        S %= alg.p
    return not S.any()


# --- matrix realisations used as an independent oracle -------------------

def _E(n, i, j):
    M = np.zeros((n, n), dtype=np.int64)
    M[i, j] = 1
    return M


def matrix_realisation(rs: RootSystem) -> dict:
    """Root vectors and coroots as matrices: sl_{l+1} or sp_{2l}."""
    l = rs.rank
    mats = {}
    if rs.family == "A":
        n = l + 1
        for a in rs.roots:
            i, j = a.index(1), a.index(-1)
            mats[a] = _E(n, i, j)
        cor = [_E(n, i, i) - _E(n, i + 1, i + 1) for i in range(l)]
    else:
        n = 2 * l
        for a in rs.roots:
            nz = [(k, c) for k, c in enumerate(a) if c]
            if len(nz) == 1:
                k, c = nz[0]
                mats[a] = _E(n, k, l + k) if c > 0 else _E(n, l + k, k)
            else:
                (i, s), (j, t) = nz
                if s > 0 and t < 0:
                    mats[a] = _E(n, i, j) - _E(n, l + j, l + i)
                elif s < 0 and t > 0:
                    mats[a] = _E(n, j, i) - _E(n, l + i, l + j)
                elif s > 0:
                    mats[a] = _E(n, i, l + j) + _E(n, j, l + i)
                else:
                    mats[a] = _E(n, l + i, j) + _E(n, l + j, i)
        H = [_E(n, k, k) - _E(n, l + k, l + k) for k in range(l)]
        cor = [H[k] - H[k + 1] for k in range(l - 1)] + [H[l - 1]]
    return {"roots": mats, "coroots": cor}


def matrix_structure_constants(rs: RootSystem) -> LieAlgebra:
    """Structure tensor computed from matrix commutators in the realisation."""
    real = matrix_realisation(rs)
    labels, broots = _labels(rs)
    n_neg = len(rs.positive)
    mats = [real["roots"][r] if r is not None else real["coroots"][k - n_neg]
            for k, r in enumerate(broots)]
    basis = np.array([m.ravel() for m in mats], dtype=np.float64)
    n = len(mats)
    T = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            C = mats[i] @ mats[j] - mats[j] @ mats[i]
            if not C.any():
                continue
            coef, *_ = np.linalg.lstsq(basis.T, C.ravel().astype(np.float64), rcond=None)
            coef = np.rint(coef).astype(np.int64)
            if not np.array_equal(np.tensordot(coef, np.array(mats), axes=1), C):
                raise AlgebraError("commutator outside the span of the basis")
            T[i, j] = coef
    return LieAlgebra(rs, T, None, labels, broots, "matrix realisation")


def sign_alignment(alg: LieAlgebra, oracle: LieAlgebra):
    """Signs eta_a (eta_-a = eta_a) with x'_a = eta_a x_a matching the oracle.

    Returns the sign dict, or ``None`` if no rescaling by signs relates the
    two tables (including any magnitude mismatch).
    """
    rs = alg.rs
    pos = list(rs.positive)
    pidx = {a: i for i, a in enumerate(pos)}

    def var(a):
        return pidx[a] if a in pidx else pidx[neg(a)]

    rows = []
    for i, a in enumerate(alg.basis_roots):
        for j, b in enumerate(alg.basis_roots):
            if a is None or b is None:
                continue
            s = add(a, b)
            if not any(s) or not rs.is_root(s):
                if not np.array_equal(alg.table[i, j], oracle.table[i, j]):
                    return None
                continue
            k = alg.x(s)
            c1, c2 = alg.table[i, j, k], oracle.table[i, j, k]
            if abs(c1) != abs(c2) or c1 == 0:
                return None
            row = np.zeros(len(pos) + 1, dtype=np.int64)
            for r in (a, b, s):
                row[var(r)] ^= 1
            row[-1] = 0 if c1 == c2 else 1
            rows.append(row)
    for i in alg.coroot_indices():
        if not np.array_equal(alg.table[i], oracle.table[i]):
            return None
    if not rows:
        return {a: 1 for a in pos}
    R, piv = fields.rref(np.array(rows), 2)
    if len(pos) in piv:
        return None
    eta = np.zeros(len(pos), dtype=np.int64)
    for r, c in zip(R, piv):
        eta[c] = r[-1]
    return {a: (-1 if eta[i] else 1) for i, a in enumerate(pos)}


# --- text and structured export ------------------------------------------

_LINE = re.compile(r"^\[(?P<a>[^,\]]+), (?P<b>[^\]]+)\] = (?P<rhs>.+)$")


def export_text(alg: LieAlgebra) -> str:
    lines = [f"# algebra {alg.rs.family} {alg.rs.rank}",
             f"# modulus {alg.p if alg.p else 0}",
             f"# signs {alg.sign_convention}",
             f"# basis {' '.join(alg.labels)}"]
    for i in range(alg.n):
        for j in range(i + 1, alg.n):
            vec = alg.table[i, j]
            terms = [f"{int(c)} * {alg.labels[k]}" for k, c in enumerate(vec) if c]
            if terms:
                lines.append(f"[{alg.labels[i]}, {alg.labels[j]}] = {' + '.join(terms)}")
    return "\n".join(lines) + "\n"


def import_text(text: str) -> LieAlgebra:
    header = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, val = line[2:].partition(" ")
            header[key] = val
        elif line.strip():
            body.append(line)
    family, rank = header["algebra"].split()
    p = int(header["modulus"]) or None
    rs = build_root_system(family, int(rank))
    labels, broots = _labels(rs)
    if header["basis"].split() != labels:
        raise AlgebraError("basis labels do not match the root system")
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    T = np.zeros((n, n, n), dtype=np.int64)
    for line in body:
        m = _LINE.match(line)
        if not m:
            raise AlgebraError(f"cannot parse line: {line!r}")
        i, j = index[m["a"]], index[m["b"]]
        for term in m["rhs"].split(" + "):
            c, _, lab = term.partition(" * ")
            T[i, j, index[lab]] = int(c)
            T[j, i, index[lab]] = -int(c)
    if p:
        T %= p
    return LieAlgebra(rs, T, p, labels, broots, header.get("signs", SIGN_CONVENTION))


def export_json(alg: LieAlgebra) -> str:
    nz = [[int(i), int(j), int(k), int(alg.table[i, j, k])]
          for i, j, k in zip(*np.nonzero(alg.table))]
    return json.dumps({"family": alg.rs.family, "rank": alg.rs.rank, "modulus": alg.p,
                       "signs": alg.sign_convention, "basis": alg.labels,
                       "brackets": nz}, sort_keys=True)


def import_json(text: str) -> LieAlgebra:
    d = json.loads(text)
    rs = build_root_system(d["family"], d["rank"])
    labels, broots = _labels(rs)
    if d["basis"] != labels:
        raise AlgebraError("basis labels do not match the root system")
    n = len(labels)
    T = np.zeros((n, n, n), dtype=np.int64)
    for i, j, k, c in d["brackets"]:
        T[i, j, k] = c
    return LieAlgebra(rs, T, d["modulus"], labels, broots, d["signs"])
