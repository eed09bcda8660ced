import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ftdesigns import gf
from ftdesigns.errors import BadDegree, FieldMismatch, NotPrime, ReduciblePolynomial, ZeroArgument

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (3, 4), (5, 2)]


@pytest.fixture(scope="module")
def gf81():
    return gf.field_create(3, 4, [2, 1, 0, 0, 1])


def test_gf81_root_is_primitive_and_designated(gf81):
    assert gf81.multiplicative_order(gf81.gen) == 80
    assert gf81.omega == gf81.gen
    assert oracles.mult_order(gf81.omega.coeffs, gf81.poly, 3) == 80


def test_gf81_omega_fourth_power(gf81):
    w = gf81.omega
    two = gf81.one + gf81.one
    assert w**4 == gf81.one + two * w
    assert w**80 == gf81.one


@pytest.mark.parametrize("p,omega", [(2, 1), (5, 2), (7, 3), (11, 2), (19, 2), (23, 5)])
def test_prime_field_omega_is_smallest_primitive_root(p, omega):
    F = gf.field_create(p)
    assert F.omega.index == omega
    powers = {pow(omega, e, p) for e in range(p - 1)}
    assert powers == set(range(1, p))


def test_inverse_in_gf5():
    F = gf.field_create(5)
    assert gf.f_arith("inv", F(2)) == F(3)


def test_frobenius(gf81):
    w = gf81.omega
    assert gf.frobenius(w, 2) == w**9
    assert gf.frobenius(w, 4) == w
    assert gf.frobenius(gf81.zero, 3) == gf81.zero


def test_dlog_roundtrip(gf81):
    assert gf81.dlog(gf81.one) == 0
    assert gf81.dlog(gf81.omega) == 1
    assert gf81.dlog(gf.f_arith("pow", gf81.omega, 56)) == 56


def test_errors():
    with pytest.raises(NotPrime):
        gf.field_create(6)
    with pytest.raises(BadDegree):
        gf.field_create(3, 0)
    with pytest.raises(ReduciblePolynomial):
        gf.field_create(3, 2, [2, 0, 1])  # x^2 + 2 = (x+1)(x+2)
    with pytest.raises(ZeroArgument):
        gf.field_create(5).dlog(0)
    with pytest.raises(ZeroDivisionError):
        gf.field_create(7)(0).inverse()
    with pytest.raises(FieldMismatch):
        gf.field_create(3, 2)(1) + gf.field_create(3, 4)(1)


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (5, 2)])
def test_default_polynomial_is_irreducible(p, d):
    assert oracles.irreducible_by_search(list(gf.default_polynomial(p, d)), p)


@pytest.mark.parametrize("p,d", [(2, 4), (3, 2), (3, 4)])
def test_irreducibility_matches_trial_division(p, d):
    import itertools
    for low in itertools.product(range(p), repeat=d):
        poly = list(low) + [1]
        assert gf.is_irreducible(poly, p) == oracles.irreducible_by_search(poly, p), poly


@pytest.mark.parametrize("p,d", FIELDS)
def test_every_unit_is_a_power_of_omega(p, d):
    F = gf.field_create(p, d)
    powers = {(F.omega**e).coeffs for e in range(F.order - 1)}
    assert len(powers) == F.order - 1
    assert len(gf.primitive_elements(F)) == sum(
        1 for e in range(1, F.order) if _gcd(e, F.order - 1) == 1)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def test_subfield_elements():
    F = gf.field_create(3, 4, [2, 1, 0, 0, 1])
    sub = gf.subfield_elements(F, 2)
    assert len(sub) == 9
    assert all(a**9 == a for a in sub)


@st.composite
def field_triples(draw):
    p, d = draw(st.sampled_from(FIELDS))
    F = gf.field_create(p, d)
    pick = st.integers(0, F.order - 1).map(F.from_index)
    return F, draw(pick), draw(pick), draw(pick)


@settings(max_examples=150, deadline=None)
@given(field_triples())
def test_field_axioms(data):
    F, a, b, c = data
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert (a * a.inverse()).is_one()


@settings(max_examples=150, deadline=None)
@given(field_triples())
def test_multiplication_matches_naive_polynomials(data):
    F, a, b, _ = data
    assert (a * b).coeffs == oracles.gf_mul(a.coeffs, b.coeffs, F.poly, F.p)


def test_json_roundtrip(gf81):
    assert gf.FieldSpec.from_json(gf81.to_json()) == gf81
