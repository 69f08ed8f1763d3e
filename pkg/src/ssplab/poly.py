"""Univariate and trivariate polynomials over finite fields.

Coefficients are stored as integer codes of a :class:`~ssplab.field.FiniteField`
(plain residues for the prime field).  Polynomials are treated as immutable
values: every operation returns a new object.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Mapping, Sequence

from .field import FiniteField, FpElement, FqElement, prime_field

Monomial = tuple[int, int, int]

NEG_INF = float("-inf")

ONE_MONO: Monomial = (0, 0, 0)


def grevlex_key(m: Monomial) -> tuple[int, int, int, int]:
    """Sort key for graded reverse lexicographic order with z1 > z2 > z3."""
    return (m[0] + m[1] + m[2], -m[2], -m[1], -m[0])


def lex_key(m: Monomial) -> Monomial:
    return m


ORDER_KEYS: dict[str, Callable[[Monomial], tuple]] = {
    "grevlex": grevlex_key,
    "lex": lex_key,
}


def _as_field(field) -> FiniteField:
    if isinstance(field, FiniteField):
        return field
    return prime_field(field)


def _coerce_scalar(field: FiniteField, c) -> int:
    if isinstance(c, FqElement):
        if c.field == field:
            return c.code
        if c.field.k == 1 and c.field.p == field.p:
            return field.from_int(c.code)
        raise ValueError("scalar from an incompatible field")
    if isinstance(c, FpElement):
        return field.from_int(c.value)
    if isinstance(c, int):
        return field.from_int(c)
    raise TypeError(f"cannot use {type(c).__name__} as a scalar")


class TriPoly:
    """Sparse polynomial in z1, z2, z3 keyed by exponent triples."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: Mapping[Monomial, int] | None = None):
        self.field = _as_field(field)
        if not terms:
            self.terms = {}
        elif self.field.k == 1:
            p = self.field.p
            self.terms = {tuple(m): c % p for m, c in terms.items() if c % p}
        else:
            self.terms = {tuple(m): c for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, field: FiniteField, terms: dict) -> "TriPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, field) -> "TriPoly":
        return cls(field)

    @classmethod
    def constant(cls, field, c) -> "TriPoly":
        field = _as_field(field)
        return cls(field, {ONE_MONO: _coerce_scalar(field, c)})

    @classmethod
    def monomial(cls, field, exps: Sequence[int], c=1) -> "TriPoly":
        field = _as_field(field)
        return cls(field, {tuple(exps): _coerce_scalar(field, c)})

    @classmethod
    def variable(cls, field, index: int) -> "TriPoly":
        """The variable z_index, index in {1, 2, 3}."""
        exps = [0, 0, 0]
        exps[index - 1] = 1
        return cls.monomial(field, exps)

    # -- basic protocol --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = TriPoly.constant(self.field, other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if self.field.k == 1:
            return f"TriPoly(p={self.field.p}, {self.to_text()!r})"
        return f"TriPoly({self.field!r}, {self.terms!r})"

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self, order: str = "grevlex") -> list[tuple[Monomial, int]]:
        """Terms in descending monomial order."""
        key = ORDER_KEYS[order]
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=ORDER_KEYS[order])

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def degree_in(self, index: int):
        if not self.terms:
            return NEG_INF
        return max(m[index - 1] for m in self.terms)

    # -- ring operations -------------------------------------------------------

    def _check(self, other: "TriPoly") -> None:
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other):
        if isinstance(other, (int, FpElement, FqElement)):
            other = TriPoly.constant(self.field, other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        F = self.field
        for m, c in other.terms.items():
            s = F.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return TriPoly._raw(F, out)

    __radd__ = __add__

    def __neg__(self) -> "TriPoly":
        F = self.field
        return TriPoly._raw(F, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, FpElement, FqElement)):
            other = TriPoly.constant(self.field, other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TriPoly":
        F = self.field
        c = _coerce_scalar(F, c)
        if c == 0:
            return TriPoly._raw(F, {})
        return TriPoly._raw(F, {m: F.mul(v, c) for m, v in self.terms.items()})

    def shift(self, exps: Sequence[int]) -> "TriPoly":
        """Multiply by the monomial z^exps."""
        a, b, c = exps
        return TriPoly._raw(
            self.field, {(m[0] + a, m[1] + b, m[2] + c): v for m, v in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, FpElement, FqElement)):
            return self.scale(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        self._check(other)
        F = self.field
        out: dict[Monomial, int] = {}
        get = out.get
        if F.k == 1:
            for (a1, a2, a3), c in self.terms.items():
                for (b1, b2, b3), d in other.terms.items():
                    key = (a1 + b1, a2 + b2, a3 + b3)
                    out[key] = get(key, 0) + c * d
            p = F.p
            return TriPoly._raw(F, {m: v % p for m, v in out.items() if v % p})
        for (a1, a2, a3), c in self.terms.items():
            for (b1, b2, b3), d in other.terms.items():
                key = (a1 + b1, a2 + b2, a3 + b3)
                out[key] = F.add(get(key, 0), F.mul(c, d))
        return TriPoly._raw(F, {m: v for m, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TriPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = TriPoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- calculus and substitutions -------------------------------------------

    def partial_derivative(self, index: int) -> "TriPoly":
        """Formal derivative with respect to z_index (1-based)."""
        if index not in (1, 2, 3):
            raise ValueError("variable index must be 1, 2 or 3")
        i = index - 1
        F = self.field
        out = {}
        for m, c in self.terms.items():
            n = m[i] % F.p
            if n == 0:
                continue
            v = F.mul(c, n)
            if v:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = v
        return TriPoly._raw(F, out)

    def permute_variables(self, sigma: Sequence[int]) -> "TriPoly":
        """Rename z_i to z_sigma(i); ``sigma`` is the 1-based image tuple."""
        if sorted(sigma) != [1, 2, 3]:
            raise ValueError(f"not a permutation of (1, 2, 3): {sigma}")
        out = {}
        for m, c in self.terms.items():
            mm = [0, 0, 0]
            for i in range(3):
                mm[sigma[i] - 1] = m[i]
            out[tuple(mm)] = c
        return TriPoly._raw(self.field, out)

    def evaluate(self, point: Sequence) -> FqElement:
        """Evaluate at a point whose coordinates are FqElements (or ints).

        The coordinates must share one field L; the coefficient field must be
        L itself or the prime field of L.
        """
        L = None
        for x in point:
            if isinstance(x, FqElement):
                if L is not None and x.field != L:
                    raise ValueError("point coordinates lie in different fields")
                L = x.field
        if L is None:
            L = self.field
        if self.field != L and not (self.field.k == 1 and self.field.p == L.p):
            raise ValueError("coefficient field does not embed in the point field")
        xs = [_coerce_scalar(L, x) for x in point]
        return FqElement(L, evaluate_codes(self, L, xs))

    def to_text(self) -> str:
        return format_tripoly(self)

    @classmethod
    def from_text(cls, text: str, p: int) -> "TriPoly":
        return parse_tripoly(text, p)


def evaluate_codes(poly: TriPoly, L: FiniteField, xs: Sequence[int]) -> int:
    """Evaluate ``poly`` at codes ``xs`` of L; returns a code of L."""
    if not poly.terms:
        return 0
    powers = []
    for i, x in enumerate(xs):
        top = max(m[i] for m in poly.terms)
        pw = [1]
        for _ in range(top):
            pw.append(L.mul(pw[-1], x))
        powers.append(pw)
    p0, p1, p2 = powers
    acc = 0
    lift = poly.field != L
    for (a, b, c), v in poly.terms.items():
        coef = L.from_int(v) if lift else v
        acc = L.add(acc, L.mul(L.mul(coef, p0[a]), L.mul(p1[b], p2[c])))
    return acc


# -- text format ---------------------------------------------------------------


def format_tripoly(poly: TriPoly) -> str:
    """Terms grevlex-descending, ``c*z1^a*z2^b*z3^c`` joined by `` + ``.

    Coefficients are residues in [0, p).  Zero exponents are omitted, unit
    exponents are written without ``^1``, the zero polynomial is ``0``.
    """
    if poly.field.k != 1:
        raise ValueError("text format is defined for prime-field polynomials only")
    if not poly.terms:
        return "0"
    parts = []
    for m, c in poly.sorted_terms("grevlex"):
        factors = [str(c)]
        for i, e in enumerate(m):
            if e == 1:
                factors.append(f"z{i + 1}")
            elif e > 1:
                factors.append(f"z{i + 1}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)


_FACTOR = re.compile(r"^z([123])(?:\^(\d+))?$")


def parse_tripoly(text: str, p: int) -> TriPoly:
    text = text.strip()
    field = prime_field(p)
    if text == "0":
        return TriPoly(field)
    terms: dict[Monomial, int] = {}
    for part in text.split(" + "):
        factors = part.split("*")
        coeff = int(factors[0])
        exps = [0, 0, 0]
        for fac in factors[1:]:
            match = _FACTOR.match(fac)
            if match is None:
                raise ValueError(f"malformed factor {fac!r} in {part!r}")
            exps[int(match.group(1)) - 1] += int(match.group(2) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return TriPoly(field, terms)


# -- univariate ----------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial, coefficient codes lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable[int] = ()):
        self.field = _as_field(field)
        cs = [self.field.from_int(c) if self.field.k == 1 else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def _raw(cls, field: FiniteField, coeffs: list[int]) -> "UniPoly":
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    @classmethod
    def x(cls, field) -> "UniPoly":
        return cls(field, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return f"UniPoly(p={self.field.p}, k={self.field.k}, {self.coeffs})"

    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "UniPoly") -> "UniPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
        return UniPoly._raw(F, out)

    def __neg__(self) -> "UniPoly":
        F = self.field
        return UniPoly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def scale(self, c: int) -> "UniPoly":
        F = self.field
        return UniPoly._raw(F, [F.mul(v, c) for v in self.coeffs])

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return self.scale(F.from_int(other))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(F, [])
        out = [0] * (len(a) + len(b) - 1)
        if F.k == 1:
            p = F.p
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return UniPoly._raw(F, [v % p for v in out])
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return UniPoly._raw(F, out)

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        inv_lc = F.inv(d[-1])
        q = [0] * max(0, len(r) - dd)
        while len(r) - 1 >= dd and r:
            c = F.mul(r[-1], inv_lc)
            shift = len(r) - 1 - dd
            q[shift] = c
            for i in range(dd + 1):
                r[shift + i] = F.sub(r[shift + i], F.mul(c, d[i]))
            while r and r[-1] == 0:
                r.pop()
        return UniPoly._raw(F, q), UniPoly._raw(F, r)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        F = self.field
        return UniPoly._raw(F, [F.mul(c, F.from_int(i)) for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def evaluate(self, x) -> int:
        """Horner evaluation at a code (or FqElement) of the coefficient field."""
        F = self.field
        x = _coerce_scalar(F, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def to_text(self, var: str = "t") -> str:
        """Descending-degree text, same conventions as the trivariate format."""
        if self.field.k != 1:
            raise ValueError("text format is defined for prime-field polynomials only")
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{var}")
            else:
                parts.append(f"{c}*{var}^{i}")
        return " + ".join(parts)


def gcd_uni(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(a, 0) = monic(a)``."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def is_squarefree(a: UniPoly) -> bool:
    """True iff gcd(a, a') = 1.  A vanishing derivative with deg >= 1 means
    ``a`` is a p-th power, hence not squarefree."""
    if a.is_zero():
        return False
    if a.degree < 1:
        return True
    da = a.derivative()
    if da.is_zero():
        return False
    return gcd_uni(a, da).degree == 0


# -- polynomials in x with trivariate coefficients ------------------------------


class CoeffPoly:
    """Polynomial in x whose coefficients are TriPoly values."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable[TriPoly] = ()):
        self.field = _as_field(field)
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coefficient(self, k: int) -> TriPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return TriPoly(self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __mul__(self, other: "CoeffPoly") -> "CoeffPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return CoeffPoly(self.field)
        out = [TriPoly(self.field) for _ in range(len(a) + len(b) - 1)]
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return CoeffPoly(self.field, out)

    def __pow__(self, e: int) -> "CoeffPoly":
        return power(self, e)


def multiply(a, b):
    return a * b


def power(a: CoeffPoly, e: int) -> CoeffPoly:
    """Binary exponentiation; coefficients are reduced at every product."""
    if e < 0:
        raise ValueError("negative exponent")
    result = CoeffPoly(a.field, [TriPoly.constant(a.field, 1)])
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def partial_derivative(a: TriPoly, index: int) -> TriPoly:
    return a.partial_derivative(index)


def evaluate(a: TriPoly, point: Sequence) -> FqElement:
    return a.evaluate(point)


def permute_variables(a: TriPoly, sigma: Sequence[int]) -> TriPoly:
    return a.permute_variables(sigma)
