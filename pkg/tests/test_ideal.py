import random

import numpy as np
import pytest
import sympy

from ssplab.cartier import cm_entries
from ssplab.field import prime_field
from ssplab.ideal import (
    NotZeroDimensional,
    buchberger,
    elimination_min_poly,
    is_radical_zero_dim,
    matrix_poly_eval,
    normal_form,
    quotient_algebra,
    s_polynomials_reduce_to_zero,
)
from ssplab.poly import TriPoly, UniPoly, parse_tripoly

Z = sympy.symbols("z1 z2 z3")


def P(text, p=5):
    return parse_tripoly(text, p)


def random_zero_dim_ideal(rng):
    """Pure powers z_k^d plus lower-degree noise, and a few extra generators."""
    p = rng.choice([3, 5, 7])
    F = prime_field(p)
    gens = []
    for k in range(3):
        d = rng.randint(1, 3)
        lead = [0, 0, 0]
        lead[k] = d
        terms = {tuple(lead): 1}
        for _ in range(rng.randint(0, 4)):
            m = [rng.randint(0, d) for _ in range(3)]
            if sum(m) < d:
                terms[tuple(m)] = rng.randrange(p)
        gens.append(TriPoly(F, terms))
    for _ in range(rng.randint(0, 2)):
        terms = {tuple(rng.randint(0, 2) for _ in range(3)): rng.randrange(1, p) for _ in range(3)}
        gens.append(TriPoly(F, terms))
    return p, gens


def to_sympy(f):
    return sum(c * Z[0] ** a * Z[1] ** b * Z[2] ** d for (a, b, d), c in f.terms.items())


def sympy_basis(gens, p, order):
    G = sympy.groebner([to_sympy(g) for g in gens], *Z, modulus=p, order=order)
    out = []
    for g in G.exprs:
        poly = sympy.Poly(g, *Z, modulus=p)
        out.append(TriPoly(prime_field(p), {m: int(c) % p for m, c in poly.terms()}))
    return out


RANDOM_CASES = [random_zero_dim_ideal(random.Random(seed)) for seed in range(110)]


@pytest.mark.parametrize("case", RANDOM_CASES[:40], ids=lambda c: f"p{c[0]}")
def test_basis_matches_sympy(case):
    p, gens = case
    gb = buchberger(gens)
    assert set(gb.generators) == set(sympy_basis(gens, p, "grevlex"))


@pytest.mark.parametrize("case", RANDOM_CASES[:15], ids=lambda c: f"p{c[0]}")
def test_lex_basis_matches_sympy(case):
    p, gens = case
    gb = buchberger(gens, order="lex")
    assert set(gb.generators) == set(sympy_basis(gens, p, "lex"))


def test_random_ideal_properties():
    for p, gens in RANDOM_CASES:
        gb = buchberger(gens)
        assert all(normal_form(g, gb).is_zero() for g in gens)
        assert s_polynomials_reduce_to_zero(gb)
        q = quotient_algebra(gb)
        M = q.mult_matrices
        for a in range(3):
            for b in range(a + 1, 3):
                assert np.array_equal(M[a] @ M[b] % p, M[b] @ M[a] % p)
        for v in (1, 2, 3):
            m = elimination_min_poly(q, v)
            if q.dimension:
                assert m.degree <= q.dimension
                assert not matrix_poly_eval(m, M[v - 1], p).any()


def test_basic_examples():
    gb = buchberger([P("1*z1"), P("1*z2"), P("1*z3")])
    assert set(gb.generators) == {P("1*z1"), P("1*z2"), P("1*z3")}
    assert buchberger([P("3")]).is_unit()
    assert buchberger(list(cm_entries(3).entries.values())).is_unit()


def test_normal_form_examples():
    gb = buchberger([P("1*z1"), P("1*z2"), P("1*z3")])
    assert normal_form(P("1"), gb) == P("1")
    gb = buchberger([P("1*z1^2 + 4*z1")])
    assert normal_form(P("1*z1^2"), gb) == P("1*z1")


def test_quotient_examples():
    q = quotient_algebra(buchberger([P("1*z1"), P("1*z2"), P("1*z3")]))
    assert q.staircase == ((0, 0, 0),) and q.dimension == 1
    assert all(not M.any() for M in q.mult_matrices)
    assert elimination_min_poly(q, 1) == UniPoly(prime_field(5), [0, 1])

    q = quotient_algebra(buchberger([P("1*z1^2 + 4*z1"), P("1*z2"), P("1*z3")]))
    assert set(q.staircase) == {(0, 0, 0), (1, 0, 0)}
    assert elimination_min_poly(q, 1) == UniPoly(prime_field(5), [0, 4, 1])
    assert elimination_min_poly(q, 2) == UniPoly(prime_field(5), [0, 1])
    assert is_radical_zero_dim(q)

    with pytest.raises(NotZeroDimensional):
        quotient_algebra(buchberger([P("1*z1")]))


def test_radical_test():
    assert is_radical_zero_dim(quotient_algebra(buchberger([P("1*z1"), P("1*z2"), P("1*z3")])))
    assert not is_radical_zero_dim(quotient_algebra(buchberger([P("1*z1^2"), P("1*z2"), P("1*z3")])))
    # x^5 - x is squarefree over F_5; x^5 - 1 = (x - 1)^5 is not
    assert is_radical_zero_dim(quotient_algebra(buchberger([P("1*z1^5 + 4*z1"), P("1*z2"), P("1*z3")])))
    assert not is_radical_zero_dim(quotient_algebra(buchberger([P("1*z1^5 + 4"), P("1*z2"), P("1*z3")])))


def test_unit_quotient():
    q = quotient_algebra(buchberger([P("1")]))
    assert q.dimension == 0
    assert is_radical_zero_dim(q)


@pytest.mark.parametrize("p,D", [(5, 6), (7, 30), (11, 180)])
def test_superspecial_ideal(p, D):
    gb = buchberger(list(cm_entries(p).entries.values()))
    assert s_polynomials_reduce_to_zero(gb)
    q = quotient_algebra(gb)
    assert q.dimension == D
    assert is_radical_zero_dim(q)
    for v in (1, 2, 3):
        m = elimination_min_poly(q, v)
        assert not matrix_poly_eval(m, q.mult_matrices[v - 1], p).any()


def test_rejects_mixed_fields():
    with pytest.raises(ValueError):
        buchberger([P("1*z1", 5), P("1*z2", 7)])
    with pytest.raises(ValueError):
        buchberger([])
