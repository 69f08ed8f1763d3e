from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ssplab.field import (
    DenominatorDivisibleByP,
    FpElement,
    FqElement,
    ZeroInverse,
    build_extension,
    check_modulus,
    format_fq,
    frobenius,
    inverse,
    odd_primes_up_to,
    prime_field,
    reduce_rational_mod_p,
)

FIELDS = [(3, 1), (5, 1), (13, 1), (3, 2), (5, 2), (7, 2), (2 + 1, 3), (5, 3)]


@st.composite
def field_and_elements(draw, n=3):
    p, k = draw(st.sampled_from(FIELDS))
    F = build_extension(p, k)
    codes = [draw(st.integers(0, F.q - 1)) for _ in range(n)]
    return F, [FqElement(F, c) for c in codes]


@given(field_and_elements())
def test_ring_axioms(data):
    F, (a, b, c) = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a
    assert a - a == 0
    assert a + (-a) == 0


@given(field_and_elements(n=2))
def test_inverse_and_division(data):
    F, (a, b) = data
    if a.code == 0:
        with pytest.raises(ZeroInverse):
            inverse(a)
        return
    assert a * inverse(a) == 1
    assert (b / a) * a == b


@given(field_and_elements(n=1))
def test_frobenius_is_additive_and_has_order_k(data):
    F, (a,) = data
    b = FqElement(F, (a.code * 7 + 3) % F.q)
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    x = a
    for _ in range(F.k):
        x = frobenius(x)
    assert x == a
    assert a ** (F.q - 1) == (0 if a.code == 0 else 1)


@given(field_and_elements(n=2))
def test_tables_match_scalar_ops(data):
    F, (a, b) = data
    add, mul = F.tables()
    assert add[a.code, b.code] == F.add(a.code, b.code)
    assert mul[a.code, b.code] == F.mul(a.code, b.code)


def test_extension_moduli_are_lex_smallest():
    assert build_extension(3, 2).modulus == (1, 0, 1)
    assert build_extension(5, 2).modulus == (2, 0, 1)


def test_generator_is_a_root_of_the_modulus():
    for p, k in [(3, 2), (5, 2), (7, 2), (5, 3)]:
        F = build_extension(p, k)
        t = F.generator()
        acc = 0
        for e, c in enumerate(F.modulus):
            acc = F.add(acc, F.mul(F.from_int(c), F.pow(t, e)))
        assert acc == 0
        assert len({F.pow(t, e) for e in range(k)}) == k


def test_prime_subfield_embedding():
    F = build_extension(5, 2)
    assert F.from_int(7) == 2
    assert FqElement(F, 3) * 2 == FqElement(F, 1)


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        FqElement(build_extension(3, 2), 1) + FqElement(build_extension(5, 2), 1)


def test_check_modulus():
    for bad in (2, 4, 9, 1, 0, -3):
        with pytest.raises(ValueError):
            check_modulus(bad)
    assert check_modulus(13) == 13


def test_odd_primes_up_to():
    assert odd_primes_up_to(20) == [3, 5, 7, 11, 13, 17, 19]
    assert odd_primes_up_to(2) == []


def test_reduce_rational_mod_p():
    assert reduce_rational_mod_p(Fraction(1, 2), 5) == FpElement(3, 5)
    assert reduce_rational_mod_p(Fraction(-3, 4), 7).value == (-3 * pow(4, -1, 7)) % 7
    with pytest.raises(DenominatorDivisibleByP):
        reduce_rational_mod_p(Fraction(1, 10), 5)


def test_fp_element_ops():
    a = FpElement(3, 7)
    assert a + 5 == FpElement(1, 7)
    assert a * a == 2
    assert a / a == 1
    assert inverse(a) == FpElement(5, 7)
    with pytest.raises(ZeroInverse):
        FpElement(0, 7) / FpElement(0, 7)


def test_format_fq_lists_every_coefficient():
    F = build_extension(7, 2)
    assert format_fq(F, 0) == "0+0*t"
    assert format_fq(F, 1 + 6 * 7) == "1+6*t"
    F3 = build_extension(3, 3)
    assert format_fq(F3, 2 + 0 * 3 + 1 * 9) == "2+0*t+1*t^2"
    assert format_fq(prime_field(5), 4) == "4"
