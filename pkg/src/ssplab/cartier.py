"""Cartier-Manin entries of Rosenhain-form curves and the Hasse polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .field import check_modulus, odd_primes_up_to, prime_field
from .poly import CoeffPoly, TriPoly, UniPoly, gcd_uni, is_squarefree, power

# Keys used in reports, in the order (i, j) = (1,1), (1,2), (2,1), (2,2).
ENTRY_NAMES = {
    (1, 1): "c_p-1",
    (1, 2): "c_p-2",
    (2, 1): "c_2p-1",
    (2, 2): "c_2p-2",
}


@dataclass(frozen=True)
class RosenhainCurve:
    p: int
    g: int

    def __post_init__(self):
        check_modulus(self.p)
        if self.g not in (1, 2):
            raise ValueError(f"genus must be 1 or 2, got {self.g}")


@dataclass(frozen=True)
class CartierManinData:
    """Entries c_{ip-j} of the Cartier-Manin matrix, keyed by (i, j).

    For g = 2 the values are TriPoly in (z1, z2, z3); for g = 1 the single
    entry is a UniPoly in the Legendre parameter.
    """

    p: int
    g: int
    entries: dict

    def entry(self, i: int, j: int):
        return self.entries[(i, j)]

    def matrix(self) -> list[list]:
        return [[self.entries[(i, j)] for j in range(1, self.g + 1)] for i in range(1, self.g + 1)]

    def to_json(self) -> dict:
        if self.g == 2:
            entries = {ENTRY_NAMES[key]: self.entries[key].to_text() for key in sorted(self.entries)}
        else:
            entries = {"c_p-1": self.entries[(1, 1)].to_text("z1")}
        return {"p": self.p, "g": self.g, "entries": entries}


def rosenhain_f(p: int, g: int) -> CoeffPoly:
    """f(x) = x(x-1)(x-z1)...(x-z_{2g-1}) with symbolic z's."""
    RosenhainCurve(p, g)
    F = prime_field(p)
    one = TriPoly.constant(F, 1)
    zero = TriPoly(F)
    f = CoeffPoly(F, [zero, one]) * CoeffPoly(F, [-one, one])
    for k in range(1, 2 * g):
        f = f * CoeffPoly(F, [-TriPoly.variable(F, k), one])
    return f


@lru_cache(maxsize=None)
def _expansion(p: int, g: int) -> CoeffPoly:
    return power(rosenhain_f(p, g), (p - 1) // 2)


@lru_cache(maxsize=None)
def cm_entries(p: int, g: int = 2) -> CartierManinData:
    """Cartier-Manin entries from the full expansion of f(x)^((p-1)/2).

    Cached per (p, g); lru_cache is safe under concurrent callers.
    """
    RosenhainCurve(p, g)
    expansion = _expansion(p, g)
    entries = {}
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            c = expansion.coefficient(i * p - j)
            if g == 1:
                coeffs = [0] * (c.degree_in(1) + 1 if c else 0)
                for (n1, _, _), v in c.terms.items():
                    coeffs[n1] = v
                c = UniPoly(c.field, coeffs)
            entries[(i, j)] = c
    return CartierManinData(p, g, entries)


def hasse_polynomial(p: int) -> UniPoly:
    """H_p(t) = sum_i binom((p-1)/2, i)^2 t^i over F_p."""
    check_modulus(p)
    e = (p - 1) // 2
    return UniPoly(p, [comb(e, i) ** 2 for i in range(e + 1)])


def igusa_separability_scan(p_max: int) -> dict:
    """Squarefreeness of H_p for every odd prime p <= p_max.

    Returns ``{"results": {p: bool}, "witnesses": {p: gcd text}, "pass": bool}``;
    a witness is the repeated factor gcd(H_p, H_p') for a failing prime.
    """
    if p_max < 3:
        raise ValueError("p_max must be at least 3")
    results: dict[int, bool] = {}
    witnesses: dict[int, str] = {}
    for p in odd_primes_up_to(p_max):
        h = hasse_polynomial(p)
        ok = is_squarefree(h)
        results[p] = ok
        if not ok:
            witnesses[p] = gcd_uni(h, h.derivative()).to_text()
    return {"results": results, "witnesses": witnesses, "pass": all(results.values())}
