"""Root systems of types A_l and C_l in epsilon coordinates.

Roots are integer tuples.  Type A_l lives in Z^{l+1} (coordinate sum zero),
type C_l in Z^l.  Coordinates are never projected, so formulas written with
epsilon indices transcribe directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

Root = tuple


class RootSystemError(ValueError):
    pass


def inner(a: Root, b: Root) -> int:
    return sum(x * y for x, y in zip(a, b))


def neg(a: Root) -> Root:
    return tuple(-x for x in a)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def cartan_integer(alpha: Root, beta: Root) -> int:
    """The integer 2(beta, alpha)/(alpha, alpha)."""
    aa = inner(alpha, alpha)
    if aa == 0:
        raise RootSystemError("zero root")
    num = 2 * inner(beta, alpha)
    if num % aa:
        raise RootSystemError(f"{alpha}, {beta} do not give an integral pairing")
    return num // aa


def reflect(alpha: Root, beta: Root) -> Root:
    """Image of ``beta`` under the reflection in ``alpha``."""
    c = cartan_integer(alpha, beta)
    return tuple(b - c * a for a, b in zip(alpha, beta))


def eps(dim: int, *terms) -> Root:
    """Build a root from ``(sign, index)`` pairs, indices starting at 1.

    ``eps(3, (1, 1), (-1, 2))`` is e1 - e2 in Z^3.
    """
    v = [0] * dim
    for sign, i in terms:
        v[i - 1] += sign
    return tuple(v)


def _a_roots(l: int):
    d = l + 1
    return [eps(d, (1, i), (-1, j)) for i in range(1, d + 1)
            for j in range(1, d + 1) if i != j]


def _c_roots(l: int):
    out = []
    for i in range(1, l + 1):
        out.append(eps(l, (2, i)))
        out.append(eps(l, (-2, i)))
        for j in range(1, l + 1):
            if i < j:
                for s in (1, -1):
                    for t in (1, -1):
                        out.append(eps(l, (s, i), (t, j)))
    return out


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    roots: tuple
    base: tuple
    positive: tuple
    _coeffs: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.roots[0])

    @property
    def negative(self) -> tuple:
        return tuple(neg(a) for a in self.positive)

    def __contains__(self, a) -> bool:
        return tuple(a) in self._coeffs

    def index(self, a: Root) -> int:
        return self.roots.index(tuple(a))

    def simple_coefficients(self, a: Root) -> tuple:
        """Coordinates of ``a`` in the base."""
        try:
            return self._coeffs[tuple(a)]
        except KeyError:
            raise RootSystemError(f"{a} is not a root of {self.name}") from None

    def height(self, a: Root) -> int:
        return sum(self.simple_coefficients(a))

    def is_positive(self, a: Root) -> bool:
        return self.height(a) > 0

    def length2(self, a: Root) -> int:
        return inner(a, a)

    def coroot_coefficients(self, a: Root) -> tuple:
        """Coordinates of the coroot 2a/(a,a) in the simple coroots."""
        out = []
        aa = inner(a, a)
        for c, b in zip(self.simple_coefficients(a), self.base):
            num = c * inner(b, b)
            assert num % aa == 0
            out.append(num // aa)
        return tuple(out)

    def is_root(self, a: Root) -> bool:
        return tuple(a) in self._coeffs

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def label(self, a: Root) -> str:
        """Compact text label such as ``e1-e2`` or ``-2e3``."""
        parts = []
        for i, c in enumerate(a, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}e{i}")
        return "".join(parts)


def _solve_base(base, a):
    """Coordinates of ``a`` in ``base``, solved exactly via the Gram matrix."""
    n = len(base)
    G = [[sum(Fraction(x) * y for x, y in zip(base[i], base[j])) for j in range(n)]
         for i in range(n)]
    rhs = [sum(Fraction(x) * y for x, y in zip(base[i], a)) for i in range(n)]
    # Gaussian elimination on the Gram matrix
    M = [row[:] + [r] for row, r in zip(G, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    sol = [M[i][n] for i in range(n)]
    if any(s.denominator != 1 for s in sol):
        raise RootSystemError(f"{a} not in the root lattice")
    return tuple(int(s) for s in sol)


def build_root_system(family: str, l: int) -> RootSystem:
    """Root system of type ``A`` (l >= 1) or ``C`` (l >= 2).

    Positive roots are ordered by height, ties broken lexicographically on
    the base coordinates (earlier simple roots first); ``roots`` lists the
    positive roots followed by their negatives in the same order.
    """
    family = family.upper()
    if family == "A" and l >= 1:
        raw = _a_roots(l)
        d = l + 1
        base = [eps(d, (1, i), (-1, i + 1)) for i in range(1, l + 1)]
    elif family == "C" and l >= 2:
        raw = _c_roots(l)
        base = [eps(l, (1, i), (-1, i + 1)) for i in range(1, l)] + [eps(l, (2, l))]
    else:
        raise RootSystemError(f"unsupported root system {family}{l}")
    coeffs = {a: _solve_base(base, a) for a in raw}
    pos = [a for a in raw if sum(coeffs[a]) > 0]
    for a in raw:
        c = coeffs[a]
        if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise RootSystemError(f"{a} has mixed-sign base coordinates")
    pos.sort(key=lambda a: (sum(coeffs[a]), tuple(-x for x in coeffs[a])))
    roots = tuple(pos) + tuple(neg(a) for a in pos)
    return RootSystem(family, l, roots, tuple(base), tuple(pos), coeffs)


def weyl_conjugate(rs: RootSystem, source: Root, target: Root) -> Optional[list]:
    """Shortest word ``[i1, i2, ...]`` of simple reflections taking source to target.

    The reflections are applied left to right: first ``s_{i1}``.  Among
    shortest words the lexicographically smallest is returned.  ``None`` if
    the roots are not conjugate (different lengths).
    """
    source, target = tuple(source), tuple(target)
    for a in (source, target):
        if not rs.is_root(a):
            raise RootSystemError(f"{a} is not a root of {rs.name}")
    if inner(source, source) != inner(target, target):
        return None
    seen = {source: []}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        if a == target:
            return seen[a]
        for i, b in enumerate(rs.base):
            r = reflect(b, a)
            if r not in seen:
                seen[r] = seen[a] + [i]
                queue.append(r)
    return None


def apply_word(rs: RootSystem, word, a: Root) -> Root:
    for i in word:
        a = reflect(rs.base[i], a)
    return a
