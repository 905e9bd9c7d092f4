import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie import fields
from modlie.chevalley import build_algebra
from modlie.redenv import Character, CharacterError
from modlie.repmod import (ExtensionField, InfeasibleError, ModuleError, bracket_failures,
                           build_baby_verma, chi_law_failures, compatible_weights,
                           composition_factors, invariants, is_simple, is_submodule, make_module,
                           quotient, regular_crosscheck, simple_dimensions, simple_head, spin,
                           verify_module)

P = 7
F, H, E = 0, 1, 2


@pytest.fixture(scope="module")
def sl2():
    return build_algebra("A", 1, P)


def explicit_verma(lam, chi_f, p=P):
    """sl_2 baby Verma from the classical formulas, basis v_i = f^i v0."""
    d = p
    Fm, Hm, Em = (np.zeros((d, d), dtype=np.int64) for _ in range(3))
    for i in range(d):
        Hm[i, i] = (lam - 2 * i) % p
        if i + 1 < d:
            Fm[i + 1, i] = 1
        else:
            Fm[0, i] = chi_f % p          # f^p acts as chi(f)^p = chi(f)
        if i:
            Em[i - 1, i] = i * (lam - i + 1) % p
    return [Fm, Hm, Em]


def generated_algebra_dim(mats, p):
    """Dimension of the associative algebra generated by ``mats`` (Burnside oracle)."""
    d = mats[0].shape[0]
    span = [np.eye(d, dtype=np.int64).ravel()]
    frontier = [np.eye(d, dtype=np.int64)]
    r = 1
    while frontier:
        new = []
        for W in frontier:
            for G in mats:
                X = (G @ W) % p
                cand = np.array(span + [X.ravel()])
                if fields.rank(cand, p) > r:
                    span.append(X.ravel())
                    r += 1
                    new.append(X)
        frontier = new
    return r


# ---------------------------------------------------------
# extension field
# ---------------------------------------------------------
def test_artin_schreier_field():
    K = ExtensionField(P, P)
    t = K.theta()
    assert np.array_equal(K.pow(t, P), K.add(t, K.scalar(1)))
    a = K.add(t, K.scalar(3))
    assert np.array_equal(K.mul(a, K.inv(a)), K.scalar(1))
    with pytest.raises(ModuleError):
        ExtensionField(P, 2)


# ---------------------------------------------------------
# construction
# ---------------------------------------------------------
def test_restricted_verma(sl2):
    M = build_baby_verma(sl2, Character.zero(sl2), (0,))
    assert M.dim == 7
    v0 = M.highest[0]
    assert not np.any(M.dense(E) @ v0 % P)
    verify_module(M)


def test_semisimple_character_modules(sl2):
    chi = Character.from_labels(sl2, {"h": 1})
    lams = compatible_weights(chi)
    assert len(lams) == 7
    for lam in lams:
        M = build_baby_verma(sl2, chi, lam)
        assert M.k == 7 and M.dim == 7
        assert chi_law_failures(M) == [] and bracket_failures(M) == []


def test_incompatible_weight_and_nonstandard_character(sl2):
    chi = Character.from_labels(sl2, {"h": 1})
    with pytest.raises(CharacterError, match="h1"):
        build_baby_verma(sl2, chi, (0,))
    with pytest.raises(CharacterError, match="standard position"):
        build_baby_verma(sl2, Character.from_labels(sl2, {"e": 1}))


def test_a2_regular_semisimple_dimension():
    A2 = build_algebra("A", 2, P)
    chi = Character.parse(A2, "h1=1,h2=1")
    M = build_baby_verma(A2, chi)
    assert M.dim == 343 and M.gdim == 343 * 7
    for i in A2.positive_indices():
        assert not np.any(M.mats[i] @ M.highest.T % P)
    assert chi_law_failures(M) == []


@pytest.mark.parametrize("lam", range(P))
@pytest.mark.parametrize("chi_f", [0, 1, 3])
def test_matches_classical_formulas(sl2, lam, chi_f):
    chi = Character.from_labels(sl2, {"f": chi_f})
    M = build_baby_verma(sl2, chi, (lam,))
    ref = explicit_verma(lam, chi_f)
    for i in (F, H, E):
        assert np.array_equal(M.dense(i), ref[i])


def test_mutated_module_fails_verification(sl2):
    M = build_baby_verma(sl2, Character.zero(sl2), (2,))
    bad = make_module(sl2, M.chi, [M.dense(F), M.dense(H), 2 * M.dense(E)])
    assert bracket_failures(bad)
    with pytest.raises(ModuleError):
        verify_module(bad)


# ---------------------------------------------------------
# spinning and simplicity
# ---------------------------------------------------------
def test_spin_examples(sl2):
    chi = Character.from_labels(sl2, {"f": 1})
    M = build_baby_verma(sl2, chi)
    assert spin(M, M.highest[0]).shape[0] == 7
    with pytest.raises(ModuleError):
        spin(M, np.zeros(7, dtype=np.int64))
    triv = make_module(sl2, Character.zero(sl2), [np.zeros((1, 1))] * 3)
    assert spin(triv, np.array([1])).shape[0] == 1
    assert is_simple(triv).status == "simple"


def test_restricted_verma_singular_vector(sl2):
    Z = build_baby_verma(sl2, Character.zero(sl2), (0,))
    # oracle: classical formulas give e f v0 = 0, so f v0 spans a 6-dim submodule
    ref = explicit_verma(0, 0)
    v1 = ref[F][:, 0]
    assert not np.any(ref[E] @ v1 % P)
    S = spin(Z, v1)
    assert S.shape[0] == 6
    assert is_submodule(Z, S)
    v = is_simple(Z)
    assert v.status == "not-simple"
    assert spin(Z, v.witness).shape[0] < 7


@pytest.mark.parametrize("chi_f", [0, 1])
def test_simplicity_against_burnside(sl2, chi_f):
    chi = Character.from_labels(sl2, {"f": chi_f})
    for lam in range(P):
        M = build_baby_verma(sl2, chi, (lam,))
        oracle = generated_algebra_dim(explicit_verma(lam, chi_f), P) == 49
        assert (is_simple(M, seed=3).status == "simple") == oracle


def test_heads_of_restricted_vermas(sl2):
    for lam in range(P):
        Z = build_baby_verma(sl2, Character.zero(sl2), (lam,))
        assert simple_head(Z).dim == lam + 1


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, P - 1), min_size=7, max_size=7), st.integers(0, 6))
def test_spin_is_invariant(v, lam):
    A = build_algebra("A", 1, P)
    Z = build_baby_verma(A, Character.zero(A), (lam,))
    v = np.array(v, dtype=np.int64)
    if not v.any():
        return
    S = spin(Z, v)
    assert is_submodule(Z, S)
    Q = quotient(Z, S) if S.shape[0] < 7 else None
    if Q is not None:
        assert Q.gdim == 7 - S.shape[0]
        assert bracket_failures(Q) == []


def test_invariants_of_simple_vermas(sl2):
    chi = Character.from_labels(sl2, {"f": 1})
    # e f^i v0 = i (lam - i + 1) f^(i-1) v0 vanishes again at i = lam + 1
    M = build_baby_verma(sl2, chi, (6,))
    assert invariants(M).shape[0] == 1
    assert is_simple(M).method == "highest-weight certificate"
    M = build_baby_verma(sl2, chi, (0,))
    assert invariants(M).shape[0] == 2
    assert is_simple(M).status == "simple"


# ---------------------------------------------------------
# sweeps and the regular representation
# ---------------------------------------------------------
def test_simple_dimensions_sl2(sl2):
    assert simple_dimensions(sl2, Character.zero(sl2)).dims == list(range(1, 8))
    r = simple_dimensions(sl2, Character.from_labels(sl2, {"f": 1}))
    assert r.dims == [7] * 7 and r.simple_vermas == 7


def test_sweep_gate():
    C3 = build_algebra("C", 3, 7)
    with pytest.raises(InfeasibleError):
        simple_dimensions(C3, Character.parse(C3, "h1=1"))
    A2 = build_algebra("A", 2, 7)
    with pytest.raises(InfeasibleError):
        simple_dimensions(A2, Character.parse(A2, "h1=1"), budget=1000)


def test_regular_crosscheck_nilpotent(sl2):
    r = regular_crosscheck(Character.from_labels(sl2, {"f": 1}))
    assert r["factor_dims"] == [7] * 49


def test_regular_crosscheck_semisimple(sl2):
    r = regular_crosscheck(Character.from_labels(sl2, {"h": 1}))
    assert r["rank"] == 343 and r["ok"]


def test_regular_crosscheck_restricted(sl2):
    # projective covers: each L(d), d < p, occurs 2p times; the Steinberg module p times
    dims = regular_crosscheck(Character.zero(sl2))["factor_dims"]
    for d in range(1, 7):
        assert dims.count(d) == 14
    assert dims.count(7) == 7


def test_composition_factors_of_restricted_verma(sl2):
    Z = build_baby_verma(sl2, Character.zero(sl2), (2,))
    assert composition_factors(Z) == [3, 4]
