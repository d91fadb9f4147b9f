from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab.scalar import (
    DivisionByZero,
    FieldMismatch,
    FieldSpec,
    ScalarParseError,
    UnsupportedOrder,
    characteristic,
    cyclotomic_polynomial,
    root_of_unity,
)

Q = FieldSpec.rational()
FIELDS = [Q, FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(7),
          FieldSpec.cyclotomic(3), FieldSpec.cyclotomic(4), FieldSpec.cyclotomic(12)]


@pytest.mark.parametrize("text,expected", [
    ("Q", FieldSpec.rational()),
    ("GF(5)", FieldSpec.prime(5)),
    ("F(5)", FieldSpec.prime(5)),
    ("prime:13", FieldSpec.prime(13)),
    ("Q(zeta_4)", FieldSpec.cyclotomic(4)),
    ("cyclotomic:9", FieldSpec.cyclotomic(9)),
])
def test_parse_field(text, expected):
    assert FieldSpec.parse(text) == expected
    assert FieldSpec.parse(str(expected)) == expected


@pytest.mark.parametrize("text", ["GF(4)", "GF(1)", "Q(zeta_0)", "R", "", "GF(x)"])
def test_parse_field_rejects(text):
    with pytest.raises(ScalarParseError):
        FieldSpec.parse(text)


def test_characteristic():
    assert characteristic(Q) == 0
    assert characteristic(FieldSpec.prime(5)) == 5
    assert characteristic(FieldSpec.cyclotomic(8)) == 0


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]


def test_rational_arithmetic():
    assert Q("1/2") + Q("1/3") == Fraction(5, 6)
    assert Q(3) / Q(4) == Fraction(3, 4)
    assert Q(-2) ** -2 == Fraction(1, 4)


def test_prime_field_arithmetic():
    F = FieldSpec.prime(7)
    assert F(3).inverse() == 5
    assert F(3) * F(5) == 1
    assert str(F(10)) == "3 mod 7"


def test_half_in_char_two_raises():
    F2 = FieldSpec.prime(2)
    with pytest.raises(DivisionByZero):
        F2(1) / F2(2)
    with pytest.raises(DivisionByZero):
        F2("1/2")


def test_zero_has_no_inverse():
    for f in FIELDS:
        with pytest.raises(DivisionByZero):
            f.zero.inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Q(1) + FieldSpec.prime(3)(1)


def test_cyclotomic_reduction():
    C = FieldSpec.cyclotomic(4)
    z = C.generator()
    assert z * z == -1
    assert (1 + z) * (1 - z) == 2
    C3 = FieldSpec.cyclotomic(3)
    w = C3.generator()
    assert 1 + w + w * w == 0


@pytest.mark.parametrize("field,order", [
    (Q, 1), (Q, 2), (FieldSpec.prime(7), 3), (FieldSpec.prime(7), 6), (FieldSpec.prime(5), 4),
    (FieldSpec.cyclotomic(4), 4), (FieldSpec.cyclotomic(3), 6), (FieldSpec.cyclotomic(12), 12),
    (FieldSpec.cyclotomic(12), 3), (FieldSpec.cyclotomic(5), 10),
])
def test_root_of_unity_has_exact_order(field, order):
    r = root_of_unity(field, order)
    assert r ** order == 1
    for d in range(1, order):
        assert r ** d != 1


@pytest.mark.parametrize("field,order", [(Q, 3), (FieldSpec.prime(7), 4), (FieldSpec.cyclotomic(4), 3)])
def test_root_of_unity_unsupported(field, order):
    with pytest.raises(UnsupportedOrder):
        root_of_unity(field, order)


def test_scalar_parse_roundtrip_examples():
    C = FieldSpec.cyclotomic(12)
    s = C.parse_scalar("z^5 + 3")
    assert C.parse_scalar(str(s)) == s
    assert str(C.parse_scalar("1 + 2*z - z^3")) == "1 + 2*z - z^3"
    with pytest.raises(ScalarParseError):
        C.parse_scalar("1 + w")


def test_cyclotomic_inverse_matches_sympy():
    C = FieldSpec.cyclotomic(5)
    s = C.parse_scalar("2 + z - 3*z^2")
    x = sympy.Symbol("x")
    phi = sympy.cyclotomic_poly(5, x)
    inv = sympy.invert(2 + x - 3 * x ** 2, phi, x)
    coeffs = sympy.Poly(inv, x).all_coeffs()[::-1]
    expected = C.zero
    for i, c in enumerate(coeffs):
        expected = expected + C(Fraction(int(c.p), int(c.q))) * C.generator() ** i
    assert s.inverse() == expected


# -- field axioms as properties -------------------------------------------------------------

def _elements(field: FieldSpec):
    small = st.fractions(min_value=-20, max_value=20, max_denominator=6)
    if field.kind == "rational":
        return small.map(field)
    if field.kind == "prime":
        return st.integers(0, field.param - 1).map(field)
    deg = field.degree
    return st.lists(small, min_size=deg, max_size=deg).map(
        lambda cs: sum((field(c) * field.generator() ** i for i, c in enumerate(cs)), field.zero))


@pytest.mark.parametrize("field", FIELDS, ids=str)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_field_axioms(field, data):
    el = _elements(field)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + field.zero == a and a * field.one == a
    assert a - a == field.zero
    if a:
        assert a * a.inverse() == field.one
        assert (b / a) * a == b


@pytest.mark.parametrize("field", FIELDS, ids=str)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_parse_print_idempotent(field, data):
    a = data.draw(_elements(field))
    assert field.parse_scalar(str(a)) == a
    assert str(field.parse_scalar(str(a))) == str(a)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 24), k=st.integers(-30, 30))
def test_generator_powers_are_periodic(n, k):
    C = FieldSpec.cyclotomic(n)
    z = C.generator()
    assert z ** n == 1
    assert z ** k == z ** (k % n)
