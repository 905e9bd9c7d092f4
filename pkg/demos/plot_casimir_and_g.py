"""
The Casimir element and g = x^(p-1) - x_-
=========================================

In U(sl_2) the element w = (h+1)^2 + 4 x_- x is central.  The element
g = x^(p-1) - x_- has weight -2 and acts invertibly on a baby Verma module
whose character vanishes on root vectors.
"""

from modlie import paperlab as pl
from modlie.chevalley import build_algebra
from modlie.pbw import to_text
from modlie.redenv import Character
from modlie.repmod import build_baby_verma

A = build_algebra("A", 1, 7)
alpha = (1, -1)
g, w = pl.make_g_w(A, alpha)
print("w =", to_text(w.element))
print("g =", to_text(g.element))
print(pl.check_w_central(A, alpha))

###############################################################################
# Inside sl_3 the same element fails to commute with the other root vectors.

A2 = build_algebra("A", 2, 7)
others = [b for b in A2.rs.roots if b not in (alpha + (0,), (-1, 1, 0))]
rep = pl.check_w_central(A2, (1, -1, 0), others=others)
print({k: v for k, v in rep["outside_triple_nonzero"].items() if v})

###############################################################################
# On Z_chi with chi(h) = 1 the image of g is invertible and its p-th power
# is a scalar in GF(7^7).

M = build_baby_verma(A, Character.from_labels(A, {"h": 1}))
print(pl.check_g_identities(A, alpha, M))
