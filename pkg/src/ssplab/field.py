"""Exact arithmetic in F_p and F_{p^k}.

Elements of F_{p^k} are handled internally as integer *codes*
``c0 + c1*p + ... + c_{k-1}*p^(k-1)`` where ``c0 + c1*t + ...`` is the
residue modulo the defining polynomial.  For ``k == 1`` the code is simply the
residue in ``[0, p)``, so prime-field arithmetic is the fast special case of
the same machinery.  :class:`FpElement` and :class:`FqElement` are thin
immutable wrappers for callers that want operator syntax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

# Dense add/mul tables are built on demand only for fields at most this large.
TABLE_LIMIT = 4096


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting zero."""


class DenominatorDivisibleByP(ArithmeticError):
    """Raised when reducing a rational whose denominator is divisible by p."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def odd_primes_up_to(n: int) -> list[int]:
    if n < 3:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(3, n + 1) if sieve[i]]


def check_modulus(p: int) -> int:
    """Validate that ``p`` is an odd prime and return it."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"modulus must be an int, got {type(p).__name__}")
    if p == 2 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    return p


# -- dense univariate helpers on coefficient lists (lowest degree first) --------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i in range(dm + 1):
            a[shift + i] = (a[shift + i] - c * m[i]) % p
        _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _polymod(out, m, p)


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [c * inv % p for c in b]
        a, b = b, _polymod(a, b, p)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Rabin-style test: ``m`` monic of degree k is irreducible over F_p iff it
    shares no factor with ``x^(p^i) - x`` for ``i <= k/2``."""
    k = len(m) - 1
    if k == 1:
        return True
    if m[0] == 0:
        return False
    xp = [0, 1]
    for _ in range(1, k // 2 + 1):
        # xp <- xp^p mod m
        result, base, e = [1], xp, p
        while e:
            if e & 1:
                result = _polymulmod(result, base, m, p)
            base = _polymulmod(base, base, m, p)
            e >>= 1
        xp = result
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_polygcd(m, _trim(diff), p)) > 1:
            return False
    return True


class FiniteField:
    """The field F_{p^k} = F_p[t]/(modulus).

    ``modulus`` is the list of coefficients of a monic irreducible polynomial,
    lowest degree first.  All methods operate on integer codes.
    """

    __slots__ = ("p", "k", "q", "modulus", "_tables")

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        check_modulus(p)
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        modulus = [c % p for c in modulus]
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self._tables = None

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # -- encoding --------------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        code = 0
        for d in reversed(list(ds)):
            code = code * self.p + d % self.p
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def element(self, code: int) -> "FqElement":
        return FqElement(self, code)

    def generator(self) -> int:
        """Code of the class of ``t`` (the adjoined root)."""
        return self.p if self.k > 1 else self.modulus[0] * (self.p - 1) % self.p

    # -- arithmetic on codes ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_digits([-d for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if self._tables is not None:
            return int(self._tables[1][a, b])
        return self.from_digits(
            _polymulmod(_trim(self.digits(a)), _trim(self.digits(b)), list(self.modulus), self.p)
        )

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            return pow(a, e, self.p)
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.p}^{self.k}")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    def tables(self):
        """Dense ``(add, mul)`` tables as numpy arrays, for small fields."""
        if self._tables is None:
            import numpy as np

            if self.q > TABLE_LIMIT:
                raise ValueError(f"field of size {self.q} too large for dense tables")
            q, p = self.q, self.p
            dig = np.array([self.digits(a) for a in range(q)], dtype=np.int64).reshape(q, self.k)
            weights = p ** np.arange(self.k, dtype=np.int64)
            add = ((dig[:, None, :] + dig[None, :, :]) % p) @ weights
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    mul[a, b] = mul[b, a] = self.mul(a, b)
            self._tables = (add, mul)
        return self._tables


@lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    check_modulus(p)
    return FiniteField(p, 1, (0, 1))


@lru_cache(maxsize=None)
def build_extension(p: int, k: int) -> FiniteField:
    """F_{p^k} defined by the lexicographically smallest monic irreducible
    polynomial of degree ``k`` (coefficients compared from ``x^(k-1)`` down)."""
    check_modulus(p)
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        return prime_field(p)
    for n in range(p**k):
        low = []
        for _ in range(k):
            n, r = divmod(n, p)
            low.append(r)
        # n = c_{k-1} p^{k-1} + ... + c_0, so counting n walks the lex order
        modulus = low + [1]
        if _is_irreducible(modulus, p):
            return FiniteField(p, k, modulus)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FpElement:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * inverse(FpElement(o, self.p))

    def __pow__(self, e: int):
        if e < 0:
            return inverse(self) ** (-e)
        return FpElement(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class FqElement:
    field: FiniteField
    code: int

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.code))

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, FpElement):
            return self.field.from_int(other.value)
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, code: int) -> "FqElement":
        return FqElement(self.field, code)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.code, o))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, FpElement)):
            return self.code == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __str__(self):
        return format_fq(self.field, self.code)


def format_fq(field: FiniteField, code: int) -> str:
    """Comma-free text ``c0+c1*t+c2*t^2...`` listing all k coefficients."""
    parts = []
    for i, c in enumerate(field.digits(code)):
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*t")
        else:
            parts.append(f"{c}*t^{i}")
    return "+".join(parts)


def inverse(a):
    """Multiplicative inverse of an :class:`FpElement` or :class:`FqElement`."""
    if isinstance(a, FpElement):
        if a.value == 0:
            raise ZeroInverse(f"0 has no inverse mod {a.p}")
        return FpElement(pow(a.value, -1, a.p), a.p)
    if isinstance(a, FqElement):
        return FqElement(a.field, a.field.inv(a.code))
    raise TypeError(f"cannot invert {type(a).__name__}")


def frobenius(a: FqElement) -> FqElement:
    return FqElement(a.field, a.field.frobenius(a.code))


def reduce_rational_mod_p(r: Fraction | int, p: int) -> FpElement:
    r = Fraction(r)
    if r.denominator % p == 0:
        raise DenominatorDivisibleByP(f"{r} is not p-integral for p={p}")
    return FpElement(r.numerator * pow(r.denominator, -1, p), p)
