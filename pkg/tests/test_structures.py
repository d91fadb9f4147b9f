from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab import groups as grp
from twistlab.gallery import group_algebra, truncated_polynomial
from twistlab.scalar import DivisionByZero, FieldSpec
from twistlab.structures import (
    AlgebraData,
    CoalgebraData,
    DegeneratePairing,
    FrobeniusData,
    NonAssociativePairing,
    check_algebra,
    check_associative_pairing,
    check_bialgebra,
    check_coalgebra,
    check_frobenius,
    check_nondegenerate,
    check_separable,
    check_snake,
    check_special,
    check_symmetric,
    copairing_from_frobenius,
    frobenius_from_pairing,
    gram_matrix,
    nakayama_from_pairing,
    pairing_from_frobenius,
)
from twistlab.tensor import (
    LinearMap,
    Vector,
    compose,
    ground,
    identity,
    maps_equal,
    permutation,
    tensor_map,
    tensor_space,
    zero_map,
)

Q = FieldSpec.rational()


def kc2(field=Q):
    return group_algebra(2, field, "kC2")


def frobenius_gallery(field=Q):
    out = [("kC2", kc2(field).frobenius), ("kC3", group_algebra(3, field).frobenius),
           ("kC2xC2", group_algebra([2, 2], field).frobenius), ("kS3", group_algebra(grp.symmetric3(), field).frobenius)]
    out += [(f"k[x]/(x^{n})", truncated_polynomial(n, field).frobenius) for n in (1, 2, 3, 4)]
    return out


GALLERY = frobenius_gallery()


# -- algebras and coalgebras ---------------------------------------------------------------

@pytest.mark.parametrize("name,f", GALLERY, ids=[n for n, _ in GALLERY])
def test_gallery_algebras_and_coalgebras_pass(name, f):
    assert check_algebra(f.algebra).ok
    assert check_coalgebra(f.coalgebra).ok
    assert check_frobenius(f).ok


def test_corrupted_unit_witness():
    a = kc2().algebra
    bad = AlgebraData(a.space, a.mul, LinearMap.from_images(ground(Q), a.space, {"1": {"g": 1}}))
    r = check_algebra(bad)
    assert not r.ok
    assert not r["left unit"].ok
    w = r["left unit"].witness
    assert w.label == ("1", "1")
    assert w.lhs == Vector.basis(a.space, "g") and w.rhs == Vector.basis(a.space, "1")
    assert r["associativity"].ok


def test_frobenius_coalgebra_of_c2():
    c = kc2().frobenius_coalgebra
    assert c.comul.apply("g") == Vector.from_terms(c.comul.codomain, {("g", "1"): 1, ("1", "g"): 1})
    assert check_coalgebra(c).ok


def test_x2_coalgebra_values():
    t = truncated_polynomial(2, Q)
    d = t.frobenius_coalgebra.comul
    assert d.apply("1") == Vector.from_terms(d.codomain, {("1", "x"): 1, ("x", "1"): 1})
    assert d.apply("x") == Vector.from_terms(d.codomain, {("x", "x"): 1})
    assert t.frobenius_coalgebra.counit.apply("x").coefficient("1") == 1


def test_grouplike_coalgebra():
    assert check_coalgebra(kc2().grouplike).ok


def test_truncated_polynomial_binomial_coalgebra():
    assert check_coalgebra(truncated_polynomial(4, Q).binomial_coalgebra).ok


# -- bialgebras --------------------------------------------------------------------------------

def test_group_algebra_is_bialgebra():
    ga = kc2()
    assert check_bialgebra(ga.algebra, ga.grouplike).ok


def test_frobenius_structure_is_not_bialgebra():
    ga = kc2()
    r = check_bialgebra(ga.algebra, ga.frobenius_coalgebra)
    assert not r["counit multiplicative"].ok
    w = r["counit multiplicative"].witness
    assert w.label == ("g", "g")
    assert w.lhs.coefficient("1") == 1 and w.rhs.coefficient("1") == 0


def test_frobenius_check_fails_for_grouplike():
    ga = kc2()
    r = check_frobenius(FrobeniusData(ga.algebra, ga.grouplike))
    assert not r.ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_binomial_structure_needs_characteristic(n):
    # k[x]/(x^n) with the binomial coalgebra is a bialgebra exactly when n is a power of the characteristic
    assert not check_bialgebra(truncated_polynomial(n, Q).algebra, truncated_polynomial(n, Q).binomial_coalgebra).ok
    if n in (2, 3):
        F = FieldSpec.prime(n)
        t = truncated_polynomial(n, F)
        assert check_bialgebra(t.algebra, t.binomial_coalgebra).ok


# -- pairings --------------------------------------------------------------------------------

def test_c2_pairing_is_delta():
    f = kc2().frobenius
    beta = pairing_from_frobenius(f)
    for a in ("1", "g"):
        for b in ("1", "g"):
            expected = 1 if f.algebra.product(a, b) == Vector.basis(f.space, "1") else 0
            assert beta.apply((a, b)).coefficient("1") == expected


def test_x2_gram_matrix():
    beta = pairing_from_frobenius(truncated_polynomial(2, Q).frobenius)
    assert gram_matrix(beta) == [[0, 1], [1, 0]]
    assert sympy.Matrix([[int(str(x)) for x in row] for row in gram_matrix(beta)]).det() == -1
    assert check_nondegenerate(beta).ok


def test_c2_copairing():
    f = kc2().frobenius
    alpha = copairing_from_frobenius(f)
    assert alpha.apply("1") == Vector.from_terms(alpha.codomain, {("1", "1"): 1, ("g", "g"): 1})
    nd = check_nondegenerate(pairing_from_frobenius(f))
    assert nd.ok and maps_equal(nd.copairing, alpha)
    assert check_snake(pairing_from_frobenius(f), alpha).ok


def test_zero_pairing():
    V = kc2().space
    zero = zero_map(tensor_space(V, V), ground(Q))
    assert not check_nondegenerate(zero).ok
    assert check_symmetric(zero).ok
    assert check_associative_pairing(zero, kc2().algebra).ok
    with pytest.raises(DegeneratePairing):
        frobenius_from_pairing(kc2().algebra, zero)


def test_non_associative_pairing():
    a = kc2().algebra
    V = a.space
    # β(u⊗v) = 1 only on (1, g): not of the form λ(uv)
    beta = LinearMap.from_images(tensor_space(V, V), ground(Q), {("1", "g"): {"1": 1}, ("g", "1"): {"1": 2}})
    c = check_associative_pairing(beta, a)
    assert not c.ok and c.witness is not None
    with pytest.raises(NonAssociativePairing):
        frobenius_from_pairing(a, beta)


def test_skewed_pairing_not_symmetric():
    V = truncated_polynomial(2, Q).space
    beta = LinearMap.from_images(tensor_space(V, V), ground(Q), {("1", "x"): {"1": 1}, ("x", "1"): {"1": 2}})
    assert not check_symmetric(beta).ok


@pytest.mark.parametrize("name,f", GALLERY, ids=[n for n, _ in GALLERY])
def test_pairing_roundtrip(name, f):
    beta = pairing_from_frobenius(f)
    assert check_associative_pairing(beta, f.algebra).ok
    nd = check_nondegenerate(beta)
    assert nd.ok
    assert maps_equal(nd.copairing, copairing_from_frobenius(f))
    rebuilt = frobenius_from_pairing(f.algebra, beta)
    assert maps_equal(rebuilt.coalgebra.comul, f.coalgebra.comul)
    assert maps_equal(rebuilt.coalgebra.counit, f.coalgebra.counit)


def test_gram_inverse_matches_sympy():
    f = truncated_polynomial(3, Q).frobenius
    beta = pairing_from_frobenius(f)
    G = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in gram_matrix(beta)])
    Ginv = G.inv()
    alpha = check_nondegenerate(beta).copairing
    labels = f.space.basis
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            assert alpha.apply("1").coefficient((a, b)) == Q(str(Ginv[i, j]))


# -- special, separable, Nakayama ------------------------------------------------------------------

def test_c2_not_special():
    f = kc2().frobenius
    c = check_special(f)
    assert not c.ok
    assert c.witness.label == "1"
    assert c.witness.lhs.coefficient("1") == 2


def test_rescaled_c2_special():
    sp = kc2().special_frobenius()
    assert check_special(sp).ok
    assert check_frobenius(sp).ok
    assert check_separable(sp.algebra, sp.coalgebra.comul).ok


def test_c2_separable_over_q():
    ga = kc2()
    assert check_separable(ga.algebra, ga.separability_section()).ok


def test_c2_section_impossible_in_char_two():
    with pytest.raises(DivisionByZero):
        kc2(FieldSpec.prime(2)).separability_section()


def test_dual_numbers_section_fails():
    t = truncated_polynomial(2, Q)
    A = t.space
    gamma = LinearMap.from_images(A, tensor_space(A, A), lambda a: {(a, "1"): 1})
    r = check_separable(t.algebra, gamma)
    assert r["section of multiplication"].ok
    assert not r["bimodule section"].ok


@pytest.mark.parametrize("name,f", GALLERY, ids=[n for n, _ in GALLERY])
def test_special_implies_separable(name, f):
    if check_special(f).ok:
        assert check_separable(f.algebra, f.coalgebra.comul).ok


@pytest.mark.parametrize("name,f", GALLERY, ids=[n for n, _ in GALLERY])
def test_nakayama_intertwines(name, f):
    beta = pairing_from_frobenius(f)
    theta = nakayama_from_pairing(f.algebra, beta).theta
    V = f.space
    lhs = compose(beta, permutation([V, V], (1, 0)))
    rhs = compose(beta, tensor_map(identity(V), theta))
    # β(y⊗x) = β(x⊗Θy)
    assert maps_equal(lhs, rhs)
    assert maps_equal(theta, identity(V)).equal == check_symmetric(beta).ok


def test_nonsymmetric_nakayama():
    # k⟨x,y⟩ style pairing: Gram [[0,1],[2,0]] on a 2-dim algebra
    t = truncated_polynomial(2, Q)
    V = t.space
    beta = LinearMap.from_images(tensor_space(V, V), ground(Q), {("1", "x"): {"1": 1}, ("x", "1"): {"1": 2}})
    theta = nakayama_from_pairing(t.algebra, beta).theta
    assert not maps_equal(theta, identity(V)).equal
    assert maps_equal(compose(beta, permutation([V, V], (1, 0))), compose(beta, tensor_map(identity(V), theta)))


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-5, max_value=5).filter(bool), st.fractions(min_value=-5, max_value=5).filter(bool))
def test_scaled_frobenius_structures(s, t):
    # (sΔ, s⁻¹ε) is again a Frobenius structure on k[x]/(x^3); the roundtrip recovers it
    tp = truncated_polynomial(3, Q)
    c = tp.frobenius_coalgebra
    f = FrobeniusData(tp.algebra, CoalgebraData(c.space, c.comul.scale(Q(s)), c.counit.scale(Q(1 / s))))
    assert check_frobenius(f).ok and check_coalgebra(f.coalgebra).ok
    rebuilt = frobenius_from_pairing(f.algebra, pairing_from_frobenius(f))
    assert maps_equal(rebuilt.coalgebra.comul, f.coalgebra.comul)
    # rescaling ε alone by t ≠ 1 breaks the counit axiom
    g = CoalgebraData(c.space, c.comul, c.counit.scale(Q(t)))
    assert check_coalgebra(g).ok == (t == 1)
