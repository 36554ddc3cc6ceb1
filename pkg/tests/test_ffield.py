import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fqzeta.ffield import (
    DEFAULT_MAX_FIELD_SIZE,
    Field,
    GenPow,
    field_make,
    is_prime,
    prime_factors,
    resolve_coeff,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (7, 2), (3, 3), (2, 10), (11, 2)]


def test_is_prime():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(2, 50):
        assert is_prime(n) == (n in primes)
    assert is_prime(2 ** 31 - 1)
    assert not is_prime(2 ** 32 + 1)


def test_prime_factors():
    assert prime_factors(48) == (2, 3)
    assert prime_factors(97) == (97,)
    assert prime_factors(2 ** 10) == (2,)


def test_prime_field_is_trivial_quotient():
    f = field_make(3, 1)
    assert f.q == 3
    assert f.modulus == (0, 1)
    assert [e.index for e in f.elements()] == [0, 1, 2]


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_fermat_identity_exhaustive(p, e):
    f = field_make(p, e)
    if f.q > 2048:
        pytest.skip("exhaustive identity checked up to 2048 elements")
    for a in range(f.q):
        assert f.pow_idx(a, f.q) == a


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_generator_order_exhaustive(p, e):
    f = field_make(p, e)
    seen = set()
    cur = 1
    for _ in range(f.q - 1):
        seen.add(cur)
        cur = f.mul_idx(cur, f.generator.index)
    assert cur == 1
    assert len(seen) == f.q - 1


def test_f49_generator_order_48():
    f = field_make(7, 2)
    g = f.generator
    powers = {(g ** k).index for k in range(48)}
    assert len(powers) == 48
    assert (g ** 48).index == 1
    assert all((g ** k).index != 1 for k in range(1, 48))


def test_f27_nonzero_elements_are_generator_powers():
    f = field_make(3, 3)
    powers = {f.pow_idx(f.generator.index, k) for k in range(26)}
    assert powers == set(range(1, 27))


def test_enumerate_small():
    f2 = field_make(2, 1)
    assert [e.index for e in f2.elements()] == [0, 1]
    f4 = field_make(2, 2)
    elems = list(f4.elements())
    assert len(elems) == 4
    assert len({e.index for e in elems}) == 4
    assert elems[0].index == 0


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_enumerate_cardinality_and_zero_first(p, e):
    f = field_make(p, e)
    seen = set()
    first = None
    for el in f.elements():
        if first is None:
            first = el
        seen.add(el.coeffs)
    assert first == f.zero
    assert len(seen) == f.q


def test_inverse_law_f9():
    f = field_make(3, 2)
    g = f.generator
    assert g * g.inverse() == f.one
    assert (g ** 8) == f.one


def test_characteristic_addition_f5():
    f = field_make(5, 1)
    assert f.from_int(2) + f.from_int(3) == f.zero
    assert f.from_int(2) + 3 == f.zero


def test_arithmetic_identities_random_fields():
    for p, e in [(3, 2), (5, 2), (2, 4)]:
        f = field_make(p, e)
        els = list(f.elements())
        for a in els[:10]:
            for b in els[:10]:
                assert (a + b) - b == a
                assert a * b == b * a
                if b != f.zero:
                    assert (a / b) * b == a


def test_division_by_zero():
    f = field_make(5, 1)
    with pytest.raises(ZeroDivisionError):
        f.one / f.zero


def test_mixed_field_rejected():
    a = field_make(3, 1).one
    b = field_make(5, 1).one
    with pytest.raises(ValueError):
        a + b


def test_construction_errors():
    with pytest.raises(ValueError):
        field_make(4, 1)
    with pytest.raises(ValueError):
        field_make(3, 0)
    with pytest.raises(ValueError):
        field_make(2, 21)  # 2^21 over the default bound
    field_make(2, 21, max_size=1 << 22)


def test_construction_deterministic():
    a = Field(3, 2)
    b = Field(3, 2)
    assert a.modulus == b.modulus
    assert a.generator.index == b.generator.index
    assert field_make(3, 2) is field_make(3, 2)


def test_resolve_coeff():
    f = field_make(7, 2)
    assert resolve_coeff(9, f) == f.from_int(2)
    assert resolve_coeff(GenPow(3), f) == f.generator ** 3
    assert resolve_coeff(GenPow(0), f) == f.one
    with pytest.raises(TypeError):
        resolve_coeff("3", f)


@st.composite
def field_and_pairs(draw):
    p, e = draw(st.sampled_from([(2, 2), (3, 2), (5, 2), (2, 3), (3, 3), (7, 2)]))
    f = field_make(p, e)
    a = draw(st.integers(min_value=0, max_value=f.q - 1))
    b = draw(st.integers(min_value=0, max_value=f.q - 1))
    return f, a, b


@settings(max_examples=200, deadline=None)
@given(field_and_pairs())
def test_frobenius_is_homomorphism(data):
    f, a, b = data
    frob = f.frobenius_idx
    assert frob(f.add_idx(a, b)) == f.add_idx(frob(a), frob(b))
    assert frob(f.mul_idx(a, b)) == f.mul_idx(frob(a), frob(b))


@settings(max_examples=100, deadline=None)
@given(field_and_pairs())
def test_zech_addition_matches_coeffwise(data):
    f, a, b = data
    assert f.add_idx(a, b) == f._add_coeffwise(a, b)


def test_quadratic_character():
    f = field_make(7, 1)
    squares = {f.mul_idx(a, a) for a in range(1, 7)}
    for a in range(1, 7):
        assert f.chi_idx(a) == (1 if a in squares else -1)
    assert f.chi_idx(0) == 0
    f9 = field_make(3, 2)
    sq9 = {f9.mul_idx(a, a) for a in range(1, 9)}
    for a in range(1, 9):
        assert f9.chi_idx(a) == (1 if a in sq9 else -1)
