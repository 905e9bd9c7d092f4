"""
Chevalley structure constants
=============================

Build the integral Chevalley basis of sp_6, reduce it mod 7 and test it
against commutators of explicit 6 x 6 matrices.
"""

from modlie.chevalley import (build_algebra, export_text, matrix_structure_constants,
                              sign_alignment, verify_jacobi)

C3 = build_algebra("C", 3)
print(C3.rs.name, "dimension", C3.n, "positive roots", C3.m, "rank", C3.rank)
print("basis:", " ".join(C3.labels[:4]), "...")

###############################################################################
# The Jacobi identity is checked on every triple, over Z and mod 7.

print("violations over Z:", len(verify_jacobi(C3)))
print("violations mod 7: ", len(verify_jacobi(build_algebra("C", 3, 7))))

###############################################################################
# The matrix realisation uses its own root vectors, so its constants agree
# with ours only after flipping the sign of some x_a.

signs = sign_alignment(C3, matrix_structure_constants(C3.rs))
flipped = sorted(C3.rs.label(a) for a, s in signs.items() if s == -1)
print("sign flips needed:", flipped or "none")

###############################################################################
# The text export is what ``modlie algebra C 3 7`` writes.

print("\n".join(export_text(build_algebra("C", 3, 7)).splitlines()[:8]))
