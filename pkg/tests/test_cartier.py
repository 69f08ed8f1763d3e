from itertools import permutations

import pytest
import sympy

from ssplab.cartier import (
    cm_entries,
    hasse_polynomial,
    igusa_separability_scan,
    rosenhain_f,
)
from ssplab.field import prime_field
from ssplab.lauricella import support
from ssplab.poly import TriPoly, UniPoly, parse_tripoly

PRIMES = [3, 5, 7, 11, 13]


def sympy_entry(p, i, j):
    """Independent expansion of f^((p-1)/2) with sympy."""
    x, z1, z2, z3 = sympy.symbols("x z1 z2 z3")
    f = x * (x - 1) * (x - z1) * (x - z2) * (x - z3)
    expanded = sympy.Poly(f ** ((p - 1) // 2), x, z1, z2, z3, modulus=p)
    terms = {}
    for (ex, a, b, c), coeff in expanded.terms():
        if ex == i * p - j:
            terms[(a, b, c)] = int(coeff) % p
    return TriPoly(prime_field(p), terms)


def test_p3_entries():
    cm = cm_entries(3)
    F = prime_field(3)
    assert cm.entry(2, 1) == TriPoly.constant(F, 1)
    assert cm.entry(1, 2) == parse_tripoly("1*z1*z2*z3", 3)
    assert cm.entry(2, 2) == parse_tripoly("2*z1 + 2*z2 + 2*z3 + 2", 3)


@pytest.mark.parametrize("p", [5, 7])
def test_entries_against_sympy(p):
    cm = cm_entries(p)
    for i in (1, 2):
        for j in (1, 2):
            assert cm.entry(i, j) == sympy_entry(p, i, j)


def test_rosenhain_quintic():
    f = rosenhain_f(5, 2)
    F = prime_field(5)
    assert f.coefficient(5) == TriPoly.constant(F, 1)
    assert f.coefficient(0).is_zero()
    assert f.coefficient(2) == -parse_tripoly("1*z1*z2*z3 + 1*z1*z2 + 1*z1*z3 + 1*z2*z3", 5)


def test_bad_genus():
    with pytest.raises(ValueError):
        cm_entries(5, 3)


@pytest.mark.parametrize("p", PRIMES)
def test_entries_are_symmetric(p):
    for c in cm_entries(p).entries.values():
        for sigma in permutations((1, 2, 3)):
            assert c.permute_variables(sigma) == c


@pytest.mark.parametrize("p", PRIMES)
def test_monomials_lie_in_support_slab(p):
    for (i, j), c in cm_entries(p).entries.items():
        supp = support(p, i, j)
        assert all(m in supp for m in c.terms)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
def test_genus_one_consistency(p):
    entry = cm_entries(p, 1).entry(1, 1)
    sign = 1 if (p - 1) // 2 % 2 == 0 else -1
    assert entry == hasse_polynomial(p).scale(sign % p)


def test_hasse_polynomial_examples():
    assert hasse_polynomial(3) == UniPoly(prime_field(3), [1, 1])
    assert hasse_polynomial(5) == UniPoly(prime_field(5), [1, 4, 1])
    for p in PRIMES:
        assert hasse_polynomial(p).leading_coefficient() == 1


def test_igusa_scan_small():
    assert igusa_separability_scan(3)["results"] == {3: True}
    assert igusa_separability_scan(5)["results"] == {3: True, 5: True}
    with pytest.raises(ValueError):
        igusa_separability_scan(2)


def test_cm_json_shape():
    data = cm_entries(3).to_json()
    assert data["p"] == 3 and data["g"] == 2
    assert data["entries"]["c_2p-1"] == "1"
    assert data["entries"]["c_p-2"] == "1*z1*z2*z3"
