"""
Products of shifted Cartan forms
================================

Assemble the elements A_b attached to each root, resolve the signs and
constants they leave open, and test whether the products
(B_i + A_b)^e are independent.
"""

from modlie import paperlab as pl
from modlie.chevalley import build_algebra
from modlie.redenv import Character
from modlie.repmod import build_baby_verma

###############################################################################
# sl_2 at p = 7: the 49 products span the image of U_chi on the simple module.

A = build_algebra("A", 1, 7)
M = build_baby_verma(A, Character.from_labels(A, {"h": 1}))
fam = pl.build_A_family(A, "A-semisimple", M=M)
pl.resolve_signs_constants(fam)
for r, res in fam.resolved.items():
    print(fam.label(r), res.level, "constant", res.constant)
for f in fam.findings:
    print("finding:", f["element"], "-", f["finding"])
forms = pl.build_B_forms(A, fam.alpha, seed=0)
bf = pl.build_basis_family(fam, forms, 6)
print(pl.check_independence(bf, "image", M=M))

###############################################################################
# sp_6 at p = 7: no module fits in memory, so the check is formal and capped
# at 6 factors with exponents 0 or 1.

C3 = build_algebra("C", 3, 7)
for case in ("C-short-nilpotent", "C-long-nilpotent", "C-semisimple"):
    fam = pl.build_A_family(C3, case)
    pl.resolve_signs_constants(fam)
    forms = pl.build_B_forms(C3, fam.alpha, count=6, seed=0)
    bf = pl.build_basis_family(fam, forms, 1, n_factors=6)
    r = pl.check_independence(bf, "formal", degree_cap=30)
    print(case, "findings", len(fam.findings), "rank", r["rank"], "/", r["size"], r["mode"])
