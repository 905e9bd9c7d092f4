import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie import fields
from modlie.chevalley import build_algebra
from modlie.pbw import UEAElement
from modlie.redenv import (Character, CharacterError, ReducedElement, coordinates, image_matrix,
                           inverse_root_vector, left_regular, multiply_reduced, reduce,
                           reduced_basis)
from modlie.repmod import build_baby_verma

P = 7
F, H, E = 0, 1, 2


@pytest.fixture(scope="module")
def sl2():
    return build_algebra("A", 1, P)


def gen(alg, i, k=1):
    return UEAElement.gen(alg, i, k)


def test_character_parsing(sl2):
    chi = Character.parse(sl2, "h=1")
    assert chi.values == (0, 1, 0)
    assert chi.is_semisimple_type() and chi.is_standard() and chi.is_regular_semisimple()
    nil = Character.parse(sl2, "x(-e1+e2)=2")
    assert nil.is_nilpotent_type() and nil.is_standard()
    assert Character.parse(sl2, "").is_zero()
    with pytest.raises(CharacterError):
        Character.parse(sl2, "bogus=1")
    with pytest.raises(CharacterError):
        Character(build_algebra("A", 1), (0, 0, 0))


def test_reduction_examples(sl2):
    zero = Character.zero(sl2)
    assert not reduce(gen(sl2, E, P), zero)
    chi = Character.from_labels(sl2, {"h": 1})
    assert reduce(gen(sl2, H, P), chi) == gen(sl2, H) + 1
    c = 3
    chi = Character.from_labels(sl2, {"e": c})
    assert reduce(gen(sl2, E, P + 1), chi) == gen(sl2, E).scale(pow(c, P, P))


def test_multiply_reduced_examples(sl2):
    chi = Character.from_labels(sl2, {"e": 1})
    one = UEAElement.scalar(sl2, 1)
    assert multiply_reduced(gen(sl2, E, P - 1), gen(sl2, E), chi) == one
    a = gen(sl2, F, 2) + gen(sl2, H)
    assert multiply_reduced(a, one, chi) == reduce(a, chi)
    inv = inverse_root_vector(sl2.x((1, -1)), Character.from_labels(sl2, {"e": 2}))
    assert multiply_reduced(inv, gen(sl2, E), inv.chi) == one
    with pytest.raises(CharacterError):
        inverse_root_vector(sl2.h(0), chi)


def exps(alg):
    return st.dictionaries(st.tuples(*[st.integers(0, 9)] * alg.n), st.integers(1, 6),
                           min_size=1, max_size=3)


SL2 = build_algebra("A", 1, P)


@settings(max_examples=30, deadline=None)
@given(exps(SL2), exps(SL2), st.sampled_from(["", "h=1", "f=1", "e=2,h=3"]))
def test_reduce_is_a_homomorphism(a, b, text):
    chi = Character.parse(SL2, text)
    u, v = UEAElement(SL2, a), UEAElement(SL2, b)
    assert reduce(u * v, chi) == multiply_reduced(reduce(u, chi), reduce(v, chi), chi)


@settings(max_examples=30, deadline=None)
@given(exps(SL2), st.sampled_from(["", "h=2", "f=1"]))
def test_reduced_exponents_below_p(a, text):
    r = ReducedElement(Character.parse(SL2, text), a)
    assert all(max(m) < P for m in r.terms)


def test_regular_representation_dimension(sl2):
    chi = Character.from_labels(sl2, {"f": 1})
    basis, mats = left_regular(chi)
    assert len(basis) == P ** 3 == len(reduced_basis(sl2))
    # closure: the left action of the generators satisfies the bracket relations
    T = sl2.table
    for i in range(3):
        for j in range(3):
            lhs = (fields.matmul(mats[i], mats[j], P) - fields.matmul(mats[j], mats[i], P)) % P
            rhs = sum(int(T[i, j, k]) * mats[k] for k in range(3)) % P
            assert np.array_equal(lhs, rhs)
    # the basis is independent: acting on 1 reproduces coordinates of monomials
    one = coordinates(UEAElement.scalar(sl2, 1), basis)
    assert np.array_equal(mats[F] @ one % P, coordinates(gen(sl2, F), basis))


def test_regular_representation_limit():
    A2 = build_algebra("A", 2, 7)
    with pytest.raises(CharacterError):
        left_regular(Character.zero(A2))


def test_image_matrix(sl2):
    chi = Character.from_labels(sl2, {"f": 1})
    M = build_baby_verma(sl2, chi)
    one = UEAElement.scalar(sl2, 1)
    assert np.array_equal(image_matrix(one, M), np.eye(M.gdim, dtype=np.int64))
    X = image_matrix(gen(sl2, F), M)
    assert np.array_equal(fields.matpow(X, P, P), np.eye(M.gdim, dtype=np.int64))
    kernel = gen(sl2, F, P) - 1      # x^p - x^[p] - chi(x)^p
    assert not image_matrix(kernel, M).any()
    with pytest.raises(CharacterError):
        image_matrix(ReducedElement(Character.zero(sl2), {(1, 0, 0): 1}), M)


def test_g_power_image_is_scalar_for_nilpotent_character(sl2):
    chi = Character.from_labels(sl2, {"f": 1})
    M = build_baby_verma(sl2, chi)
    g = gen(sl2, E, P - 1) - gen(sl2, F)
    gp = multiply_reduced(g, reduce(g ** (P - 1), chi), chi)
    G = image_matrix(gp, M)
    c = G[0, 0]
    assert np.array_equal(G, c * np.eye(M.gdim, dtype=np.int64) % P)
