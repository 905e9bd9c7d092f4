"""Reduced enveloping algebras U_chi(L).

U_chi is the quotient of U(L) by the central elements x^p - x^[p] - chi(x)^p
for x in the Chevalley basis.  Since those elements are central, a PBW
monomial with an exponent e >= p can be rewritten in place: a root vector
contributes chi(x)^p x^(e-p), a coroot h contributes
h^(e-p+1) + chi(h)^p h^(e-p).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import fields
from .chevalley import LieAlgebra
from .pbw import UEAElement, straightener


class CharacterError(ValueError):
    pass


_ALIASES = {"e": "x(e1-e2)", "f": "x(-e1+e2)", "h": "h1"}


@dataclass(frozen=True)
class Character:
    """A linear form on L, stored by its values on the ordered basis."""

    alg: LieAlgebra
    values: tuple

    def __post_init__(self):
        p = self.alg.p
        if not p:
            raise CharacterError("characters live on the mod-p algebra")
        if len(self.values) != self.alg.n:
            raise CharacterError("one value per basis element is required")
        object.__setattr__(self, "values", tuple(int(v) % p for v in self.values))

    @classmethod
    def zero(cls, alg):
        return cls(alg, (0,) * alg.n)

    @classmethod
    def from_labels(cls, alg, assignment: dict):
        vals = [0] * alg.n
        for lab, v in assignment.items():
            key = lab
            if key not in alg.index and alg.rs.family == "A" and alg.rs.rank == 1:
                key = _ALIASES.get(lab, lab)
            if key not in alg.index:
                raise CharacterError(f"unknown basis label {lab!r}")
            vals[alg.index[key]] = v
        return cls(alg, tuple(vals))

    @classmethod
    def parse(cls, alg, text: str):
        """Parse ``"h1=1,x(-e1+e2)=2"``; an empty string is chi = 0."""
        assignment = {}
        for part in filter(None, re.split(r"[,;]\s*", text.strip())):
            lab, _, v = part.partition("=")
            if not _:
                raise CharacterError(f"cannot parse {part!r}")
            assignment[lab.strip()] = int(v)
        return cls.from_labels(alg, assignment)

    def __call__(self, i: int) -> int:
        return self.values[i]

    def is_zero(self) -> bool:
        return not any(self.values)

    def is_nilpotent_type(self) -> bool:
        return all(self.values[i] == 0 for i in self.alg.coroot_indices())

    def is_semisimple_type(self) -> bool:
        roots = self.alg.negative_indices() + self.alg.positive_indices()
        return (all(self.values[i] == 0 for i in roots)
                and any(self.values[i] for i in self.alg.coroot_indices()))

    def is_standard(self) -> bool:
        """chi vanishes on every positive root vector."""
        return all(self.values[i] == 0 for i in self.alg.positive_indices())

    def is_regular_semisimple(self) -> bool:
        """Semisimple type with chi(h_a) != 0 for every root a."""
        if not self.is_semisimple_type():
            return False
        p = self.alg.p
        for a in self.alg.rs.positive:
            cc = self.alg.rs.coroot_coefficients(a)
            if sum(c * self.values[i] for c, i in zip(cc, self.alg.coroot_indices())) % p == 0:
                return False
        return True

    def items(self) -> list:
        """Nonzero values as (label, value) pairs in basis order."""
        return [(self.alg.labels[i], v) for i, v in enumerate(self.values) if v]

    def describe(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.items()) or "0"


def reduce_terms(terms: dict, chi: Character) -> dict:
    alg = chi.alg
    p = alg.p
    cor = set(alg.coroot_indices())
    out: dict = {}
    stack = list(terms.items())
    while stack:
        m, c = stack.pop()
        j = next((i for i, e in enumerate(m) if e >= p), None)
        if j is None:
            out[m] = (out.get(m, 0) + c) % p
            continue
        m2 = list(m)
        m2[j] -= p
        cj = chi.values[j]   # chi(x)^p = chi(x) in GF(p)
        if j in cor:
            m1 = list(m2)
            m1[j] += 1
            stack.append((tuple(m1), c))
            if cj:
                stack.append((tuple(m2), c * cj))
        elif cj:
            stack.append((tuple(m2), c * cj))
    return {m: c for m, c in out.items() if c}


class ReducedElement(UEAElement):
    """Element of U_chi in the reduced PBW basis (all exponents < p)."""

    __slots__ = ("chi",)

    def __init__(self, chi: Character, terms=None):
        super().__init__(chi.alg, reduce_terms(dict(terms or {}), chi))
        self.chi = chi


def reduce(u: UEAElement, chi: Character) -> ReducedElement:
    if u.alg is not chi.alg:
        raise CharacterError("element and character belong to different algebras")
    return ReducedElement(chi, u.terms)


def multiply_reduced(a: UEAElement, b: UEAElement, chi: Character) -> ReducedElement:
    s = straightener(chi.alg)
    return ReducedElement(chi, s.multiply(a.terms, b.terms))


def inverse_root_vector(i: int, chi: Character) -> ReducedElement:
    """chi(x)^{-p} x^{p-1}, the inverse of a root vector with chi(x) != 0."""
    p = chi.alg.p
    c = chi.values[i]
    if chi.alg.is_coroot(i) or c == 0:
        raise CharacterError("only root vectors with chi(x) != 0 are invertible this way")
    m = [0] * chi.alg.n
    m[i] = p - 1
    return ReducedElement(chi, {tuple(m): fields.inv(pow(c, p, p), p)})


def reduced_basis(alg: LieAlgebra):
    """All exponent tuples with entries < p, in lexicographic order."""
    p = alg.p
    return [tuple(int(x) for x in m) for m in np.ndindex(*([p] * alg.n))]


def image_matrix(a: UEAElement, M) -> np.ndarray:
    """rho(a) for a module M (see ``repmod.RepModule``), dense over GF(p)."""
    chi = getattr(a, "chi", None)
    if chi is not None and chi.values != M.chi.values:
        raise CharacterError("element and module have different characters")
    if a.alg is not M.alg:
        raise CharacterError("element and module belong to different algebras")
    p = M.p
    d = M.gdim
    mats = [M.dense(i) for i in range(M.alg.n)]
    out = np.zeros((d, d), dtype=np.int64)
    cache: dict = {(0,) * M.alg.n: np.eye(d, dtype=np.int64)}

    def mono(m):
        if m in cache:
            return cache[m]
        j = next(i for i, e in enumerate(m) if e)
        rest = list(m)
        rest[j] -= 1
        r = fields.matmul(mats[j], mono(tuple(rest)), p)
        cache[m] = r
        return r

    for m, c in a.terms.items():
        out = (out + c * mono(m)) % p
    return out


REGULAR_LIMIT = 500


def left_regular(chi: Character):
    """Left-multiplication matrices of the generators on U_chi.

    Only materialised when p^n <= 500 (sl_2 at p = 7).  Returns the list of
    basis exponent tuples and one matrix per Lie basis element; column j of a
    matrix holds the coordinates of x_i * b_j.
    """
    alg = chi.alg
    p = alg.p
    if p ** alg.n > REGULAR_LIMIT:
        raise CharacterError(f"left-regular representation of dimension {p ** alg.n} "
                             f"exceeds the limit {REGULAR_LIMIT}")
    basis = reduced_basis(alg)
    pos = {m: i for i, m in enumerate(basis)}
    s = straightener(alg)
    mats = []
    for i in range(alg.n):
        L = np.zeros((len(basis), len(basis)), dtype=np.int64)
        for j, m in enumerate(basis):
            for m2, c in reduce_terms(s.lmul_gen(i, m), chi).items():
                L[pos[m2], j] = (L[pos[m2], j] + c) % p
        mats.append(L)
    return basis, mats


def coordinates(u: UEAElement, basis) -> np.ndarray:
    pos = {m: i for i, m in enumerate(basis)}
    v = np.zeros(len(basis), dtype=np.int64)
    for m, c in u.terms.items():
        v[pos[m]] = c
    return v
