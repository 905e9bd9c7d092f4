"""Universal enveloping algebra in the PBW basis.

An element is a sparse map from exponent tuples (one entry per Lie basis
element, in the algebra's basis order) to coefficients: residues mod p, or
Python integers for the integral form.  Products are brought to normal form
by straightening with the bracket table, memoised per algebra on the single
step "left multiply a normal monomial by one generator".
"""

from __future__ import annotations

import re
import sys
from typing import Iterable, Optional

from .chevalley import LieAlgebra

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class PBWError(ValueError):
    pass


class _Straightener:
    def __init__(self, alg: LieAlgebra):
        self.alg = alg
        self.n = alg.n
        self.p = alg.p
        T = alg.table
        # sparse bracket rows: (j, i) -> [(k, c), ...]
        self.br = {}
        for j in range(self.n):
            for i in range(self.n):
                terms = [(int(k), int(T[j, i, k])) for k in T[j, i].nonzero()[0]]
                if terms:
                    self.br[(j, i)] = terms
        self.memo: dict = {}

    def lmul_gen(self, j: int, mono: tuple) -> dict:
        """Normal form of x_j * mono, mono a normal exponent tuple."""
        key = (j, mono)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        first = next((i for i, e in enumerate(mono) if e), self.n)
        if j <= first:
            m = list(mono)
            m[j] += 1
            out = {tuple(m): 1}
        else:
            i = first
            rest = list(mono)
            rest[i] -= 1
            rest = tuple(rest)
            out: dict = {}
            # x_j x_i rest = x_i (x_j rest) + [x_j, x_i] rest
            for m, c in self.lmul_gen(j, rest).items():
                for m2, c2 in self.lmul_gen(i, m).items():
                    out[m2] = out.get(m2, 0) + c * c2
            for k, c in self.br.get((j, i), ()):
                for m2, c2 in self.lmul_gen(k, rest).items():
                    out[m2] = out.get(m2, 0) + c * c2
            out = self._clean(out)
        self.memo[key] = out
        return out

    def _clean(self, d: dict) -> dict:
        if self.p:
            return {m: c % self.p for m, c in d.items() if c % self.p}
        return {m: c for m, c in d.items() if c}

    def lmul_elem(self, j: int, terms: dict) -> dict:
        out: dict = {}
        for m, c in terms.items():
            for m2, c2 in self.lmul_gen(j, m).items():
                out[m2] = out.get(m2, 0) + c * c2
        return self._clean(out)

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for m, c in a.items():
            acc = b
            # x_{a1} ... x_{ak} * b, applied from the right-most generator
            for j in reversed(range(self.n)):
                for _ in range(m[j]):
                    acc = self.lmul_elem(j, acc)
            for m2, c2 in acc.items():
                out[m2] = out.get(m2, 0) + c * c2
        return self._clean(out)


def straightener(alg: LieAlgebra) -> _Straightener:
    s = alg.__dict__.get("_straightener")
    if s is None:
        s = _Straightener(alg)
        alg.__dict__["_straightener"] = s
    return s


def _degree(m: tuple) -> int:
    return sum(m)


class UEAElement:
    """Immutable element of U(L) (or of U(L_Z) when ``alg.p`` is None)."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg: LieAlgebra, terms: Optional[dict] = None):
        self.alg = alg
        terms = terms or {}
        if alg.p:
            terms = {tuple(m): int(c) % alg.p for m, c in terms.items() if int(c) % alg.p}
        else:
            terms = {tuple(m): int(c) for m, c in terms.items() if int(c)}
        for m in terms:
            if len(m) != alg.n or min(m, default=0) < 0:
                raise PBWError(f"bad exponent vector {m}")
        self.terms = terms
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, alg):
        return cls(alg)

    @classmethod
    def scalar(cls, alg, c):
        return cls(alg, {(0,) * alg.n: c})

    @classmethod
    def gen(cls, alg, i: int, power: int = 1):
        m = [0] * alg.n
        m[i] = power
        return cls(alg, {tuple(m): 1})

    @classmethod
    def from_vector(cls, alg, v):
        """Degree-one element from a coefficient vector on the Lie basis."""
        terms = {}
        for i, c in enumerate(v):
            if c:
                m = [0] * alg.n
                m[i] = 1
                terms[tuple(m)] = int(c)
        return cls(alg, terms)

    # algebra
    def _check(self, other) -> "UEAElement":
        if not isinstance(other, UEAElement):
            return UEAElement.scalar(self.alg, other)
        if other.alg is not self.alg:
            raise PBWError("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return UEAElement(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return UEAElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            return self.scale(other)
        return pbw_multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = UEAElement.scalar(self.alg, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.alg is other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"UEAElement({to_text(self)})"

    @property
    def degree(self) -> int:
        return max((_degree(m) for m in self.terms), default=-1)

    def homogeneous(self, d: int) -> "UEAElement":
        return UEAElement(self.alg, {m: c for m, c in self.terms.items() if _degree(m) == d})

    def truncate(self, cap: int) -> "UEAElement":
        return UEAElement(self.alg, {m: c for m, c in self.terms.items() if _degree(m) <= cap})

    def sorted_terms(self) -> list:
        """Terms in graded lex order, highest degree first."""
        return sorted(self.terms.items(), key=lambda mc: (-_degree(mc[0]), tuple(-e for e in mc[0])))

    def reduce_mod(self, p: int, target: LieAlgebra) -> "UEAElement":
        """Image of an integral element in U(target), target the mod-p form."""
        return UEAElement(target, {m: c % p for m, c in self.terms.items()})


def pbw_multiply(u: UEAElement, v: UEAElement) -> UEAElement:
    v = u._check(v)
    return UEAElement(u.alg, straightener(u.alg).multiply(u.terms, v.terms))


def commutator(u: UEAElement, v: UEAElement) -> UEAElement:
    return pbw_multiply(u, v) - pbw_multiply(v, u)


def product(factors: Iterable[UEAElement], alg: Optional[LieAlgebra] = None) -> UEAElement:
    """Right-to-left associated product f1 (f2 (... fk))."""
    factors = list(factors)
    if not factors:
        if alg is None:
            raise PBWError("empty product needs an algebra")
        return UEAElement.scalar(alg, 1)
    acc = factors[-1]
    for f in reversed(factors[:-1]):
        acc = pbw_multiply(f, acc)
    return acc


def truncated_expand(factors: Iterable[UEAElement], degree_cap: int,
                     alg: Optional[LieAlgebra] = None) -> UEAElement:
    """Right-to-left product, dropping monomials of degree > cap after each step.

    When ``degree_cap`` is at least the sum of the factor degrees nothing is
    ever dropped and the result is the exact product.  Below that bound the
    result can differ from the exact product truncated at the cap, because
    straightening a dropped high-degree term may feed lower degrees: with
    cap 1, e (f f) loses f^2 and returns 0, while e f^2 = f^2 e + 2 f h - 2 f.
    """
    if degree_cap < 0:
        raise PBWError("degree cap must be non-negative")
    factors = list(factors)
    if not factors:
        if alg is None:
            raise PBWError("empty product needs an algebra")
        return UEAElement.scalar(alg, 1)
    acc = factors[-1].truncate(degree_cap)
    for f in reversed(factors[:-1]):
        acc = pbw_multiply(f, acc).truncate(degree_cap)
    return acc


def symbol(u: UEAElement) -> UEAElement:
    """Top-degree homogeneous part."""
    return u.homogeneous(u.degree) if u.terms else u


def symbol_multiply(u: UEAElement, v: UEAElement) -> UEAElement:
    """Product in the associated graded (commutative) algebra."""
    out: dict = {}
    for m, c in u.terms.items():
        for m2, c2 in v.terms.items():
            k = tuple(a + b for a, b in zip(m, m2))
            out[k] = out.get(k, 0) + c * c2
    return UEAElement(u.alg, out)


# --- canonical text form -------------------------------------------------

def to_text(u: UEAElement) -> str:
    if not u.terms:
        return "0"
    parts = []
    labels = u.alg.labels
    for m, c in u.sorted_terms():
        factors = [f"{labels[i]}^{e}" for i, e in enumerate(m) if e]
        parts.append(f"{c} * {' '.join(factors) if factors else '1'}")
    return " + ".join(parts)


_FACTOR = re.compile(r"^(?P<lab>.+)\^(?P<e>\d+)$")


def from_text(alg: LieAlgebra, text: str) -> UEAElement:
    text = text.strip()
    if text == "0":
        return UEAElement.zero(alg)
    index = {lab: i for i, lab in enumerate(alg.labels)}
    terms: dict = {}
    for part in text.split(" + "):
        c, sep, rest = part.partition(" * ")
        if not sep:
            raise PBWError(f"cannot parse term {part!r}")
        m = [0] * alg.n
        if rest.strip() != "1":
            for f in rest.split():
                g = _FACTOR.match(f)
                if not g or g["lab"] not in index:
                    raise PBWError(f"cannot parse factor {f!r}")
                m[index[g["lab"]]] += int(g["e"])
        key = tuple(m)
        terms[key] = terms.get(key, 0) + int(c)
    return UEAElement(alg, terms)
