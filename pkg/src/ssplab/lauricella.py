"""Truncated Lauricella F_D series and the hypergeometric form of c_{ip-j}.

Coefficients are generated as exact rationals and reduced mod p only at the
end, so p-integrality on the support slab is checked rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .field import FpElement, check_modulus, prime_field, reduce_rational_mod_p
from .poly import Monomial, TriPoly, grevlex_key


@dataclass(frozen=True)
class HGParams:
    a: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction
    c: Fraction

    @classmethod
    def for_entry(cls, j: int) -> "HGParams":
        """Parameters a = 5/2 - j, b = 1/2, c = 3 - j attached to column j."""
        _check_index(j)
        half = Fraction(1, 2)
        return cls(Fraction(5, 2) - j, half, half, half, Fraction(3 - j))


def _check_index(*ks: int) -> None:
    for k in ks:
        if k not in (1, 2):
            raise ValueError(f"entry indices must be 1 or 2, got {k}")


def pochhammer(x, n: int) -> Fraction:
    """Rising factorial x(x+1)...(x+n-1); equals 1 for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = Fraction(x)
    out = Fraction(1)
    for k in range(n):
        out *= x + k
    return out


def coeff_A(i: int, j: int, n1: int, n2: int, n3: int) -> Fraction:
    _check_index(i, j)
    if min(n1, n2, n3) < 0:
        raise ValueError("exponents must be nonnegative")
    hp = HGParams.for_entry(j)
    s = n1 + n2 + n3
    num = pochhammer(hp.a, s) * pochhammer(hp.b1, n1) * pochhammer(hp.b2, n2) * pochhammer(hp.b3, n3)
    den = pochhammer(hp.c, s) * pochhammer(1, n1) * pochhammer(1, n2) * pochhammer(1, n3)
    return num / den


@dataclass(frozen=True)
class SupportSet:
    """Exponents n with every n_k <= (p-1)/2 and d' - (p-1)/2 <= |n| <= d'."""

    p: int
    i: int
    j: int
    d_prime: int

    @property
    def half(self) -> int:
        return (self.p - 1) // 2

    def __contains__(self, n) -> bool:
        n = tuple(n)
        if len(n) != 3 or min(n) < 0 or max(n) > self.half:
            return False
        return self.d_prime - self.half <= sum(n) <= self.d_prime

    def members(self) -> list[Monomial]:
        """Members in descending grevlex order."""
        e, hi = self.half, self.d_prime
        lo = max(0, hi - e)
        out = []
        for n1 in range(e + 1):
            for n2 in range(e + 1):
                low3 = max(0, lo - n1 - n2)
                high3 = min(e, hi - n1 - n2)
                for n3 in range(low3, high3 + 1):
                    out.append((n1, n2, n3))
        out.sort(key=grevlex_key, reverse=True)
        return out

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.members())

    def __len__(self) -> int:
        return len(self.members())

    def to_json(self) -> dict:
        return {"p": self.p, "i": self.i, "j": self.j, "d_prime": self.d_prime, "size": len(self)}


def support(p: int, i: int, j: int) -> SupportSet:
    check_modulus(p)
    _check_index(i, j)
    return SupportSet(p, i, j, (p - 1) // 2 * 5 - i * p + j)


@dataclass(frozen=True)
class TruncatedSeries:
    p: int
    i: int
    j: int
    poly: TriPoly


def truncated_series(p: int, i: int, j: int) -> TruncatedSeries:
    supp = support(p, i, j)
    terms = {n: reduce_rational_mod_p(coeff_A(i, j, *n), p).value for n in supp}
    return TruncatedSeries(p, i, j, TriPoly(prime_field(p), terms))


def normalization_constant(p: int, i: int, j: int) -> FpElement:
    """(-1)^((p-1)/2) * j / i in F_p."""
    check_modulus(p)
    _check_index(i, j)
    sign = 1 if (p - 1) // 2 % 2 == 0 else -1
    return FpElement(sign * j, p) / i


def double_factorial(n: int) -> int:
    """n!! with the convention 0!! = (-1)!! = 1."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def normalization_constant_oracle(p: int, i: int, j: int) -> FpElement:
    """The same constant through the double-factorial closed form."""
    check_modulus(p)
    _check_index(i, j)
    m = p * (4 - 2 * i + 1)
    ratio = Fraction(double_factorial(m - 1), double_factorial(m - 2)) * Fraction(
        double_factorial(4 - 2 * j - 1), double_factorial(4 - 2 * j)
    )
    return reduce_rational_mod_p(ratio, p)


def pochhammer_ratio(p: int, i: int, j: int) -> Fraction:
    """<c'>_{d'} / <a'>_{d'} as an exact rational (before reduction)."""
    hp = HGParams.for_entry(j)
    d = support(p, i, j).d_prime
    return pochhammer(hp.c, d) / pochhammer(hp.a, d)


def cm_via_hypergeometric(p: int, i: int, j: int) -> TriPoly:
    return truncated_series(p, i, j).poly.scale(normalization_constant(p, i, j).value)
