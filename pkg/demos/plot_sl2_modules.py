"""
Simple modules of a reduced enveloping algebra of sl_2
======================================================

For p = 7 construct the baby Verma modules Z_chi(lam), decide which are
simple, and compare with the left-regular representation.
"""

from modlie.chevalley import build_algebra
from modlie.redenv import Character
from modlie.repmod import (build_baby_verma, composition_factors, is_simple,
                           regular_crosscheck, simple_dimensions)

A = build_algebra("A", 1, 7)

###############################################################################
# Nilpotent character chi(f) = 1: every baby Verma is simple of dimension p.

nil = Character.from_labels(A, {"f": 1})
print(nil.describe(), simple_dimensions(A, nil))

###############################################################################
# Semisimple character chi(h) = 1: the weights live in GF(7^7), where
# lam^7 - lam = 1 has its roots.

ss = Character.from_labels(A, {"h": 1})
Z = build_baby_verma(A, ss)
print("weight", Z.lam_text(), "field degree", Z.k, "dimension", Z.dim)
print(is_simple(Z))

###############################################################################
# Restricted case chi = 0: Z(lam) has composition factors of dimensions
# lam + 1 and p - 1 - lam, except the Steinberg weight lam = p - 1.

zero = Character.zero(A)
for lam in range(7):
    print(lam, composition_factors(build_baby_verma(A, zero, (lam,))))

###############################################################################
# The 343-dimensional U_chi splits as 7 matrix algebras of size 7.

print(regular_crosscheck(ss)["rank"])
