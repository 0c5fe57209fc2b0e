from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclocolour.core import (
    CLASS_NUMBER_ONE,
    CycloElem,
    ElementSyntaxError,
    InvalidFieldError,
    build_field,
    conjugate,
    cyclotomic_poly,
    euler_phi,
    format_element,
    galois,
    parse_element,
    reduce,
    root_of_unity,
    root_power,
    shift,
)

from .strategies import elements, fields

LAW = settings(max_examples=1000, deadline=None)


def naive_remainder(poly: list[int], den: tuple[int, ...]) -> list[int]:
    """Schoolbook remainder, written independently of poly_divmod."""
    rem = list(poly)
    d = len(den) - 1
    while len(rem) > d:
        c = rem.pop()
        shift_by = len(rem) - d
        for i in range(d):
            rem[shift_by + i] -= c * den[i]
    return rem + [0] * (d - len(rem))


def test_class_number_one_list():
    assert len(CLASS_NUMBER_ONE) == 29
    assert all(n % 4 != 2 for n in CLASS_NUMBER_ONE)


@pytest.mark.parametrize("n,poly", [
    (3, (1, 1, 1)),
    (4, (1, 0, 1)),
    (8, (1, 0, 0, 0, 1)),
    (12, (1, 0, -1, 0, 1)),
    (15, (1, -1, 0, 1, -1, 1, 0, -1, 1)),
])
def test_cyclotomic_poly_small(n, poly):
    assert cyclotomic_poly(n) == poly


def test_cyclotomic_poly_degree_and_value_at_one():
    for n in CLASS_NUMBER_ONE:
        poly = cyclotomic_poly(n)
        assert len(poly) - 1 == euler_phi(n)
        # Phi_n(1) is p for prime powers p^k, else 1
        ps = {p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))}
        assert sum(poly) == (ps.pop() if len(ps) == 1 else 1)


@pytest.mark.parametrize("n", [1, 2, 6, 10, 14, 0, -4])
def test_build_field_rejects(n):
    with pytest.raises(InvalidFieldError):
        build_field(n)


def test_build_field_hint_for_two_mod_four():
    with pytest.raises(InvalidFieldError, match="n=7"):
        build_field(14)


def test_field_outside_list_is_arithmetic_only():
    fld = build_field(23)
    assert not fld.class_number_one
    assert fld.euler_phi == 22


def test_parse_examples():
    assert parse_element(build_field(20), "1+x-x^3").coeffs == (1, 1, 0, -1, 0, 0, 0, 0)
    assert parse_element(build_field(7), "0").is_zero()
    assert parse_element(build_field(12), "2*x^12") == 2
    assert parse_element(build_field(5), " 3 - 2 * x ^ 2 ").coeffs == (3, 0, -2, 0)


@pytest.mark.parametrize("text", ["", "1+", "x^", "2x", "1+y", "1 -- x", "*x"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ElementSyntaxError) as info:
        parse_element(build_field(5), text)
    assert info.value.pos >= 0


def test_format_canonical():
    fld = build_field(20)
    assert format_element(parse_element(fld, "-x^3+1+x")) == "1+x-x^3"
    assert format_element(fld.zero()) == "0"
    assert format_element(parse_element(fld, "-2*x")) == "-2*x"


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_parse_format_roundtrip(data):
    fld = data.draw(fields)
    a = data.draw(elements(fld))
    assert parse_element(fld, format_element(a)) == a


def test_mul_examples():
    f4, f3, f5 = build_field(4), build_field(3), build_field(5)
    assert (1 + f4.xi) * (1 - f4.xi) == 2
    assert (1 - f3.xi) * (1 - f3.xi**2) == 3
    prod = f5.one()
    for k in range(1, 5):
        prod = prod * (1 - root_power(f5, k))
    assert prod == 5


def test_galois_examples():
    f5, f4 = build_field(5), build_field(4)
    assert galois(f5.xi, 2) == root_power(f5, 2)
    assert galois(1 + f4.xi, 3) == 1 - f4.xi
    with pytest.raises(ValueError):
        galois(f5.xi, 5)


def test_conjugate_examples():
    f4, f20 = build_field(4), build_field(20)
    assert conjugate(1 + f4.xi) == 1 - f4.xi
    q = parse_element(f20, "1+x-x^3")
    assert conjugate(q) == parse_element(f20, "1+x^19-x^17")


def test_root_power_examples():
    f3 = build_field(3)
    assert root_power(f3, 2) == parse_element(f3, "-1-x")
    assert root_power(build_field(8), 0) == 1
    f12 = build_field(12)
    assert root_power(f12, 10).coeffs == tuple(naive_remainder([0] * 10 + [1], f12.cyclo_poly))


def test_root_of_unity_odd_n_has_order_2n():
    for n in (3, 7, 15, 35):
        fld = build_field(n)
        z = root_of_unity(fld, 1)
        assert z**n == -1
        assert z ** (2 * n) == 1


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        build_field(5).xi + build_field(8).xi


@LAW
@given(st.data())
def test_mul_commutative(data):
    fld = data.draw(fields)
    a, b = data.draw(elements(fld)), data.draw(elements(fld))
    assert a * b == b * a


@LAW
@given(st.data())
def test_mul_associative(data):
    fld = data.draw(fields)
    a, b, c = (data.draw(elements(fld)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@LAW
@given(st.data())
def test_distributive(data):
    fld = data.draw(fields)
    a, b, c = (data.draw(elements(fld)) for _ in range(3))
    assert a * (b + c) == a * b + a * c


@LAW
@given(st.data())
def test_additive_group(data):
    fld = data.draw(fields)
    a, b = data.draw(elements(fld)), data.draw(elements(fld))
    assert a + b - b == a
    assert (a + (-a)).is_zero()
    assert a * 1 == a


@LAW
@given(st.data())
def test_galois_is_ring_homomorphism(data):
    fld = data.draw(fields)
    a, b = data.draw(elements(fld)), data.draw(elements(fld))
    k = data.draw(st.sampled_from(fld.galois_exponents))
    assert galois(a * b, k) == galois(a, k) * galois(b, k)
    assert galois(a + b, k) == galois(a, k) + galois(b, k)


@LAW
@given(st.data())
def test_galois_composition(data):
    fld = data.draw(fields)
    a = data.draw(elements(fld))
    j = data.draw(st.sampled_from(fld.galois_exponents))
    k = data.draw(st.sampled_from(fld.galois_exponents))
    assert galois(galois(a, j), k) == galois(a, j * k % fld.n)


@LAW
@given(st.data())
def test_conjugate_involutive_homomorphism(data):
    fld = data.draw(fields)
    a, b = data.draw(elements(fld)), data.draw(elements(fld))
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)


@LAW
@given(st.data())
def test_reduce_matches_naive_remainder(data):
    fld = data.draw(fields)
    poly = data.draw(st.lists(st.integers(-20, 20), min_size=1, max_size=3 * fld.n))
    got = reduce(fld, poly)
    assert got.coeffs == tuple(naive_remainder(poly, fld.cyclo_poly))
    assert reduce(fld, list(got.coeffs)) == got


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_shift_is_multiplication_by_xi(data):
    fld = data.draw(fields)
    a = data.draw(elements(fld))
    k = data.draw(st.integers(0, 2 * fld.n))
    assert shift(a, k) == a * root_power(fld, k)


def test_big_coefficients_stay_exact():
    fld = build_field(84)
    a = CycloElem(tuple(10**40 + i for i in range(fld.euler_phi)), fld)
    b = parse_element(fld, "1-x+x^5")
    c = a * b
    assert c * 1 == c
    assert (a + a) * b == c + c
    assert gcd(*c.coeffs) >= 1
