import random
from fractions import Fraction

import pytest

from ssplab.cartier import cm_entries
from ssplab.field import FpElement
from ssplab.lauricella import (
    HGParams,
    coeff_A,
    cm_via_hypergeometric,
    double_factorial,
    normalization_constant,
    normalization_constant_oracle,
    pochhammer,
    pochhammer_ratio,
    support,
    truncated_series,
)
from ssplab.field import reduce_rational_mod_p
from ssplab.poly import TriPoly, parse_tripoly

PRIMES = [3, 5, 7, 11, 13]
E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 0) == 1
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer(1, 5) == 120
    with pytest.raises(ValueError):
        pochhammer(1, -1)


def test_coeff_A_examples():
    assert coeff_A(1, 1, 0, 0, 0) == 1
    assert coeff_A(2, 2, 1, 0, 0) == Fraction(1, 4)
    assert coeff_A(1, 2, 1, 1, 1) == Fraction(5, 128)


def test_hg_params():
    hp = HGParams.for_entry(1)
    assert (hp.a, hp.b1, hp.c) == (Fraction(3, 2), Fraction(1, 2), 2)


def _samples(seed, count=120, top=9):
    rng = random.Random(seed)
    for _ in range(count):
        yield rng.choice((1, 2)), rng.choice((1, 2)), tuple(rng.randint(0, top) for _ in range(3))


def test_standard_relation():
    for i, j, n in _samples(1):
        s = sum(n)
        a = Fraction(5, 2) - j
        c = Fraction(3 - j)
        for k in range(3):
            up = tuple(x + y for x, y in zip(n, E[k]))
            ratio = (a + s) * (Fraction(1, 2) + n[k]) / ((c + s) * (1 + n[k]))
            assert coeff_A(i, j, *up) == ratio * coeff_A(i, j, *n)


def test_interchange_relations():
    for i, _, n in _samples(2):
        s = sum(n)
        assert coeff_A(i, 1, *n) == Fraction(1 + 2 * s, 1 + s) * coeff_A(i, 2, *n)
        up = (n[0] + 1, n[1], n[2])
        assert coeff_A(i, 2, *up) == (Fraction(1, 2) + n[0]) / (2 * (1 + n[0])) * coeff_A(i, 1, *n)


def test_coefficients_symmetric():
    for i, j, n in _samples(3, count=100):
        assert coeff_A(i, j, *n) == coeff_A(i, j, n[2], n[0], n[1]) == coeff_A(i, j, n[1], n[0], n[2])


def test_support_examples():
    s = support(3, 2, 1)
    assert s.d_prime == 0 and s.members() == [(0, 0, 0)]
    s = support(3, 1, 2)
    assert s.d_prime == 4 and s.members() == [(1, 1, 1)]
    s = support(5, 2, 2)
    assert s.d_prime == 2
    assert set(s) == {(a, b, c) for a in range(3) for b in range(3) for c in range(3) if a + b + c <= 2}
    assert s.to_json() == {"p": 5, "i": 2, "j": 2, "d_prime": 2, "size": 10}
    assert (3, 0, 0) not in s and (1, 1) not in s


@pytest.mark.parametrize("p", PRIMES)
def test_support_denominators_prime_to_p(p):
    for i in (1, 2):
        for j in (1, 2):
            for n in support(p, i, j):
                assert coeff_A(i, j, *n).denominator % p != 0


def test_truncated_series_examples():
    assert truncated_series(3, 2, 1).poly == parse_tripoly("1", 3)
    assert truncated_series(3, 1, 2).poly == parse_tripoly("1*z1*z2*z3", 3)
    assert truncated_series(5, 2, 2).poly.coefficient((1, 0, 0)) == 4


def test_normalization_examples():
    assert normalization_constant(3, 2, 1) == FpElement(1, 3)
    assert normalization_constant(5, 1, 1) == FpElement(1, 5)
    assert normalization_constant(5, 2, 1) == FpElement(3, 5)


def test_double_factorial():
    assert [double_factorial(n) for n in (-1, 0, 1, 2, 5, 6)] == [1, 1, 1, 2, 15, 48]
    with pytest.raises(ValueError):
        double_factorial(-2)


@pytest.mark.parametrize("p", PRIMES)
def test_normalization_three_ways(p):
    for i in (1, 2):
        for j in (1, 2):
            closed = normalization_constant(p, i, j)
            assert closed == normalization_constant_oracle(p, i, j)
            assert closed == reduce_rational_mod_p(pochhammer_ratio(p, i, j), p)


@pytest.mark.parametrize("p", PRIMES)
def test_two_path_identity(p):
    cm = cm_entries(p)
    for i in (1, 2):
        for j in (1, 2):
            assert cm_via_hypergeometric(p, i, j) == cm.entry(i, j)


def test_two_path_identity_p3_examples():
    assert cm_via_hypergeometric(3, 2, 1) == TriPoly.constant(cm_entries(3).entry(2, 1).field, 1)
    assert cm_via_hypergeometric(3, 1, 2) == parse_tripoly("1*z1*z2*z3", 3)


def test_bad_indices():
    with pytest.raises(ValueError):
        support(5, 3, 1)
    with pytest.raises(ValueError):
        coeff_A(1, 1, -1, 0, 0)
