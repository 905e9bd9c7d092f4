import itertools
from fractions import Fraction

import numpy as np
import pytest

from modlie import fields
from modlie import paperlab as pl
from modlie.chevalley import build_algebra
from modlie.pbw import UEAElement, commutator, product
from modlie.redenv import Character, image_matrix
from modlie.repmod import InfeasibleError, build_baby_verma
from modlie.roots import RootSystemError, eps

ALPHA1 = (1, -1)


@pytest.fixture(scope="module")
def sl2():
    return build_algebra("A", 1, 7)


@pytest.fixture(scope="module")
def sl2_module(sl2):
    return build_baby_verma(sl2, Character.from_labels(sl2, {"h": 1}))


@pytest.fixture(scope="module")
def c3():
    return build_algebra("C", 3, 7)


# ---------------------------------------------------------
# g and w
# ---------------------------------------------------------
def test_g_and_w_normal_forms(sl2):
    g, w = pl.make_g_w(sl2, ALPHA1)
    assert g.element.terms == {(0, 0, 6): 1, (1, 0, 0): 6}
    assert w.element.terms == {(0, 2, 0): 1, (0, 1, 0): 2, (0, 0, 0): 1, (1, 0, 1): 4}
    assert not commutator(w.element, pl.x_elem(sl2, ALPHA1))
    with pytest.raises(RootSystemError):
        pl.make_g_w(sl2, (2, -2))


@pytest.mark.parametrize("p", [7, 11, 13])
def test_w_central(p):
    A = build_algebra("A", 1, p)
    assert pl.check_w_central(A, ALPHA1)["pass"]


def test_w_mutation_detected(sl2):
    bad = pl.make_w(sl2, ALPHA1, four=3)
    assert not pl.check_w_central(sl2, ALPHA1, bad)["pass"]


def test_w_scope_outside_triple():
    A2 = build_algebra("A", 2, 7)
    a, b = eps(3, (1, 1), (-1, 2)), eps(3, (1, 2), (-1, 3))
    rep = pl.check_w_central(A2, a, others=[b])
    assert rep["pass"] and rep["outside_triple_nonzero"]["e2-e3"]
    # independent of PBW rewriting: the commutator acts nontrivially on a module
    M = build_baby_verma(A2, Character.parse(A2, "h1=1,h2=1"))
    W = pl.element_image(pl.make_w(A2, a), M)
    X = pl.element_image(pl.x_elem(A2, b), M)
    assert pl._spmod(W @ X - X @ W, 7).nnz > 0


@pytest.mark.parametrize("family,l", [("A", 1), ("A", 2), ("C", 2), ("C", 3)])
def test_g_is_a_weight_vector_for_every_root(family, l):
    A = build_algebra(family, l, 7)
    for a in A.rs.roots:
        g, h = pl.make_g(A, a), pl.h_elem(A, a)
        assert commutator(h, g) == g.scale(-2)


def test_g_weight_over_integers_then_mod_p(sl2):
    Z = build_algebra("A", 1)
    x, f, h = (UEAElement.gen(Z, i) for i in (2, 0, 1))
    g = x ** 6 - f
    c = commutator(h, g)
    assert c.terms == {(0, 0, 6): 12, (1, 0, 0): 2}      # 2(p-1) and 2
    assert c.reduce_mod(7, sl2) == g.reduce_mod(7, sl2).scale(-2)


def test_g_identities(sl2, sl2_module):
    rep = pl.check_g_identities(sl2, ALPHA1, sl2_module)
    assert rep["weight"] and rep["invertible"] and rep["power_scalar"]
    assert rep["conjugation_shift"]
    assert rep["power_value"] != "0"


def test_g_identities_need_vanishing_root_values(sl2):
    M = build_baby_verma(sl2, Character.from_labels(sl2, {"f": 1}))
    with pytest.raises(pl.LabError):
        pl.check_g_identities(sl2, ALPHA1, M)


# ---------------------------------------------------------
# Cartan forms
# ---------------------------------------------------------
def test_forms_rank_one(sl2):
    F = pl.build_B_forms(sl2, ALPHA1, 1, seed=0)
    assert F.count == 2
    assert all(B.degree == 1 and B.terms for B in F.elements)
    assert all(pl.check_B_forms(sl2, F).values())


def test_forms_general_position():
    A2 = build_algebra("A", 2, 7)
    F = pl.build_B_forms(A2, eps(3, (1, 1), (-1, 2)), 3, seed=5)
    assert F.count == 6
    curve = np.array([[pow(t, e, 7) for e in range(3)] for t in F.ts])
    for s in itertools.combinations(range(6), 3):
        assert fields.det(curve[list(s)], 7) != 0
    assert all(pl.check_B_forms(A2, F).values())


def test_forms_deterministic(c3):
    a = pl.distinguished_root(c3, "C-short-nilpotent")
    one = pl.build_B_forms(c3, a, count=6, seed=11)
    two = pl.build_B_forms(c3, a, count=6, seed=11)
    assert one.ts == two.ts and np.array_equal(one.rows, two.rows)


def test_forms_too_many(c3):
    with pytest.raises(pl.LabError):
        pl.build_B_forms(c3, pl.distinguished_root(c3, "C-short-nilpotent"))   # 18 > 7


# ---------------------------------------------------------
# the A tables
# ---------------------------------------------------------
def test_degenerate_rank_one_family(sl2):
    fam = pl.build_A_family(sl2, "A-semisimple")
    assert len(fam.entries) == 2
    ent = fam.entries[(-1, 1)]
    assert ent.paren.terms[1].coef == Fraction(1, 4)
    assert fam.entries[ALPHA1].prefixes == [[("g", 1)]]


def test_c3_short_family_shapes(c3):
    fam = pl.build_A_family(c3, "C-short-nilpotent")
    pl.resolve_signs_constants(fam)
    a = eps(3, (1, 1), (-1, 2))
    assert fam.element(a) == pl.x_elem(c3, a)
    assert fam.element(eps(3, (2, 3))) == pl.x_elem(c3, eps(3, (2, 3)), 2)
    assert len(fam.entries) == 18


def test_case_errors(sl2, c3):
    with pytest.raises(pl.LabError):
        pl.build_A_family(sl2, "B-whatever")
    with pytest.raises(pl.LabError):
        pl.build_A_family(c3, "A-semisimple")
    with pytest.raises(pl.LabError):
        pl.build_A_family(sl2, "C-short-nilpotent")


def test_constant_search_against_explicit_images(sl2, sl2_module):
    fam = pl.build_A_family(sl2, "A-semisimple", M=sl2_module)
    pl.resolve_signs_constants(fam)
    res = fam.resolved[(-1, 1)]
    ent = fam.entries[(-1, 1)]
    ok = []
    for c in range(7):
        u = pl.paren_element(sl2, ent.paren, (), c)
        ok.append(fields.rank(image_matrix(u, sl2_module), 7) == sl2_module.gdim)
    assert any(ok)
    assert res.constant == ok.index(True)
    assert res.nonzero_image


def test_sign_search_space(c3):
    fam = pl.build_A_family(c3, "C-short-nilpotent")
    ent = fam.entries[eps(3, (1, 1), (1, 2))]
    assert 2 ** pl._sign_slots(ent.paren) <= 8


def test_strict_resolution_names_the_element(c3):
    fam = pl.build_A_family(c3, "C-short-nilpotent")
    with pytest.raises(pl.ResolutionError) as info:
        pl.resolve_signs_constants(fam, strict=True)
    assert info.value.root_label in {c3.rs.label(r) for r in c3.rs.roots}


@pytest.mark.parametrize("case", ["C-short-nilpotent", "C-long-nilpotent", "C-semisimple"])
def test_resolution_levels_are_honest(c3, case):
    fam = pl.build_A_family(c3, case)
    pl.resolve_signs_constants(fam)
    x = pl.x_elem(c3, fam.alpha)
    named = {f["element"] for f in fam.findings}
    for r, res in fam.resolved.items():
        if res.level == "formal":
            assert pl.formal_commutes(res.factors, x) is True
        else:
            assert f"A_{c3.rs.label(r)}" in named


def test_long_root_case_resolves_formally(c3):
    fam = pl.build_A_family(c3, "C-long-nilpotent")
    pl.resolve_signs_constants(fam)
    assert fam.findings == []


def test_symbol_shortcut_agrees_with_expansion(sl2):
    x = pl.x_elem(sl2, ALPHA1)
    g, w = pl.make_g(sl2, ALPHA1), pl.make_w(sl2, ALPHA1)
    for factors in ([w, w], [g, w], [w + 1, pl.x_elem(sl2, ALPHA1, 2)], [pl.h_elem(sl2, ALPHA1)]):
        full = not commutator(x, product(factors))
        assert pl.formal_commutes(factors, x) == full


# ---------------------------------------------------------
# product family
# ---------------------------------------------------------
def resolved_sl2(sl2, M):
    fam = pl.build_A_family(sl2, "A-semisimple", M=M)
    pl.resolve_signs_constants(fam)
    return fam, pl.build_B_forms(sl2, ALPHA1, seed=0)


def test_family_sizes(sl2, sl2_module, c3):
    fam, F = resolved_sl2(sl2, sl2_module)
    assert pl.build_basis_family(fam, F, 6).size == 49
    bf = pl.build_basis_family(fam, F, 0)
    assert bf.size == 1
    assert pl.check_independence(bf, "formal")["rank"] == 1
    c = pl.build_A_family(c3, "C-short-nilpotent")
    pl.resolve_signs_constants(c)
    Fc = pl.build_B_forms(c3, c.alpha, count=6)
    assert pl.build_basis_family(c, Fc, 1, n_factors=6).size == 64


def test_unresolved_family_rejected(sl2):
    fam = pl.build_A_family(sl2, "A-semisimple")
    with pytest.raises(pl.LabError):
        pl.build_basis_family(fam, pl.build_B_forms(sl2, ALPHA1), 1)


def test_spanning_on_simple_module(sl2, sl2_module):
    fam, F = resolved_sl2(sl2, sl2_module)
    r = pl.check_independence(pl.build_basis_family(fam, F, 6), "image", M=sl2_module)
    assert r["rank"] == 49 == r["end_dim"] == r["size"]


def test_image_rank_monotone_in_cap(sl2, sl2_module):
    fam, F = resolved_sl2(sl2, sl2_module)
    ranks = [pl.check_independence(pl.build_basis_family(fam, F, c), "image", M=sl2_module)["rank"]
             for c in range(4)]
    assert ranks == sorted(ranks)


def test_repeated_product_loses_rank(sl2, sl2_module):
    fam, F = resolved_sl2(sl2, sl2_module)
    bf = pl.build_basis_family(fam, F, 1)
    bf.factors = [bf.factors[0], bf.factors[0]]
    r = pl.check_independence(bf, "formal")
    assert r["rank"] < r["size"]


def test_c3_capped_formal_independence(c3):
    fam = pl.build_A_family(c3, "C-short-nilpotent")
    pl.resolve_signs_constants(fam)
    F = pl.build_B_forms(c3, fam.alpha, count=6, seed=0)
    r = pl.check_independence(pl.build_basis_family(fam, F, 1, n_factors=6), "formal",
                              degree_cap=30)
    assert r["rank"] == 64 and r["exact"]


def test_lower_bounds_never_exceed_exact(sl2, sl2_module):
    fam, F = resolved_sl2(sl2, sl2_module)
    bf = pl.build_basis_family(fam, F, 2)
    exact = pl.check_independence(bf, "formal", degree_cap=100)
    bound = pl.check_independence(bf, "formal", degree_cap=1, M=sl2_module)
    assert exact["mode"] == "formal-exact" and bound["mode"] == "formal-bound"
    assert bound["symbol_bound"] <= exact["rank"] and bound["probe_bound"] <= exact["rank"]


def test_over_budget(sl2, sl2_module):
    fam, F = resolved_sl2(sl2, sl2_module)
    with pytest.raises(InfeasibleError):
        pl.check_independence(pl.build_basis_family(fam, F, 6), "formal", budget=10)
