"""Groebner bases and quotient algebras for zero-dimensional ideals of F_p[z1,z2,z3].

Internally a monomial is a single integer *key* that is additive under
multiplication and monotone in the monomial order, so term products are
integer additions and comparisons are integer comparisons:

* lex:     key = n1*B^2 + n2*B + n3
* grevlex: key = deg*B^3 - (n3*B^2 + n2*B + n1)

``_digits`` recovers a packed exponent vector on which divisibility is a
single guard-bit subtraction.  Exponents must stay below ``B/2``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .field import prime_field
from .poly import TriPoly, UniPoly, is_squarefree

_BITS = 12
_B = 1 << _BITS
_MASK = _B - 1
_HALF = _B >> 1
_GUARD = _HALF | (_HALF << _BITS) | (_HALF << (2 * _BITS))
_DEG_SHIFT = 3 * _BITS


class NotZeroDimensional(ValueError):
    """The ideal has an infinite staircase."""


class _Order:
    def __init__(self, kind: str):
        if kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind

    def key(self, m) -> int:
        n1, n2, n3 = m
        if max(m) >= _HALF:
            raise OverflowError("exponent too large for packed monomials")
        if self.kind == "lex":
            return (n1 << 2 * _BITS) | (n2 << _BITS) | n3
        return ((n1 + n2 + n3) << _DEG_SHIFT) - ((n3 << 2 * _BITS) | (n2 << _BITS) | n1)

    def digits(self, key: int) -> int:
        if self.kind == "lex":
            return key
        deg = -((-key) >> _DEG_SHIFT)
        return (deg << _DEG_SHIFT) - key

    def exps(self, key: int) -> tuple[int, int, int]:
        d = self.digits(key)
        hi, mid, lo = (d >> 2 * _BITS) & _MASK, (d >> _BITS) & _MASK, d & _MASK
        return (hi, mid, lo) if self.kind == "lex" else (lo, mid, hi)

    def degree(self, key: int) -> int:
        return sum(self.exps(key))


def _divides(da: int, db: int) -> bool:
    """Does the monomial with digits ``da`` divide the one with digits ``db``?"""
    return ((db | _GUARD) - da) & _GUARD == _GUARD


def _lcm_digits(da: int, db: int) -> int:
    out = 0
    for s in (0, _BITS, 2 * _BITS):
        out |= max((da >> s) & _MASK, (db >> s) & _MASK) << s
    return out


def _digits_to_key(order: _Order, d: int) -> int:
    hi, mid, lo = (d >> 2 * _BITS) & _MASK, (d >> _BITS) & _MASK, d & _MASK
    return d if order.kind == "lex" else ((hi + mid + lo) << _DEG_SHIFT) - d


class _Poly:
    """Monic polynomial: leading key plus tail as a list of (key, coeff)."""

    __slots__ = ("lm", "lm_digits", "tail")

    def __init__(self, lm: int, lm_digits: int, tail: list[tuple[int, int]]):
        self.lm = lm
        self.lm_digits = lm_digits
        self.tail = tail


class _Engine:
    def __init__(self, p: int, order: _Order):
        self.p = p
        self.order = order
        self.polys: list[_Poly] = []
        self.active: list[int] = []
        self._reducer_cache: dict[int, int] = {}

    def to_dict(self, f: TriPoly) -> dict[int, int]:
        key = self.order.key
        return {key(m): c for m, c in f.terms.items()}

    def make_poly(self, f: dict[int, int]) -> _Poly | None:
        f = {k: c for k, c in f.items() if c % self.p}
        if not f:
            return None
        lm = max(f)
        inv = pow(f[lm], -1, self.p)
        p = self.p
        tail = sorted(((k, c * inv % p) for k, c in f.items() if k != lm), reverse=True)
        return _Poly(lm, self.order.digits(lm), tail)

    def find_reducer(self, digits: int, candidates: Sequence[int]) -> int:
        cached = self._reducer_cache.get(digits)
        if cached is not None:
            return cached
        polys = self.polys
        for idx in candidates:
            if _divides(polys[idx].lm_digits, digits):
                self._reducer_cache[digits] = idx
                return idx
        return -1

    def reduce(self, f: dict[int, int], candidates: Sequence[int] | None = None) -> dict[int, int]:
        """Full normal form of ``f`` (consumed) modulo the given basis indices."""
        if candidates is None:
            candidates = self.active
        p = self.p
        polys = self.polys
        digits = self.order.digits
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem: dict[int, int] = {}
        get = f.get
        push = heapq.heappush
        while heap:
            k = -heapq.heappop(heap)
            c = f.pop(k, 0) % p
            if not c:
                continue
            d = digits(k)
            idx = self.find_reducer(d, candidates)
            if idx < 0:
                rem[k] = c
                continue
            g = polys[idx]
            shift = k - g.lm
            for kg, cg in g.tail:
                kk = kg + shift
                old = get(kk)
                if old is None:
                    f[kk] = -c * cg
                    push(heap, -kk)
                else:
                    f[kk] = old - c * cg
        return rem

    def spoly(self, i: int, j: int) -> dict[int, int]:
        f, g = self.polys[i], self.polys[j]
        lcm = _digits_to_key(self.order, _lcm_digits(f.lm_digits, g.lm_digits))
        sf, sg = lcm - f.lm, lcm - g.lm
        out: dict[int, int] = {}
        for k, c in f.tail:
            out[k + sf] = c
        for k, c in g.tail:
            kk = k + sg
            out[kk] = out.get(kk, 0) - c
        return out


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[TriPoly, ...]
    order: str = "grevlex"
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def p(self) -> int:
        return self.generators[0].field.p

    def __len__(self) -> int:
        return len(self.generators)

    def leading_monomials(self) -> list[tuple[int, int, int]]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0] == TriPoly.constant(self.generators[0].field, 1)


def _engine_for(basis: GroebnerBasis) -> _Engine:
    eng = _Engine(basis.p, _Order(basis.order))
    for g in basis.generators:
        poly = eng.make_poly(eng.to_dict(g))
        eng.polys.append(poly)
        eng.active.append(len(eng.polys) - 1)
    return eng


def _from_dict(eng: _Engine, f: dict[int, int]) -> TriPoly:
    exps = eng.order.exps
    p = eng.p
    return TriPoly(prime_field(p), {exps(k): c % p for k, c in f.items()})


def normal_form(f: TriPoly, basis: GroebnerBasis) -> TriPoly:
    """Remainder of ``f`` on division by ``basis``.

    The largest remaining term is reduced first, by the first basis element
    (in basis order) whose leading monomial divides it.
    """
    if f.field.p != basis.p:
        raise ValueError("polynomial and basis over different fields")
    eng = _engine_for(basis)
    return _from_dict(eng, eng.reduce(eng.to_dict(f)))


def buchberger(generators: Sequence[TriPoly], order: str = "grevlex") -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Pairs are processed lowest lcm degree first; the product criterion and
    the chain criterion (Gebauer-Moeller update) discard useless pairs.
    The result is monic, interreduced and sorted by increasing leading
    monomial.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not generators:
        raise ValueError("need at least one generator")
    p = generators[0].field.p
    if any(g.field.p != p or g.field.k != 1 for g in generators):
        raise ValueError("generators must lie in a common F_p[z1, z2, z3]")
    eng = _Engine(p, _Order(order))
    pairs: list[tuple[int, int, int, int]] = []  # (lcm degree, lcm key, i, j)
    stats = {"pairs_reduced": 0, "zero_reductions": 0, "pairs_discarded": 0}

    def lcm_key(i: int, j: int) -> int:
        return _digits_to_key(eng.order, _lcm_digits(eng.polys[i].lm_digits, eng.polys[j].lm_digits))

    def add(poly: _Poly) -> None:
        nonlocal pairs
        polys = eng.polys
        polys.append(poly)
        h = len(polys) - 1
        hd = poly.lm_digits
        # Gebauer-Moeller update
        cands = [(g, _lcm_digits(hd, polys[g].lm_digits)) for g in eng.active]
        kept = []
        for idx, (g, lg) in enumerate(cands):
            coprime = lg == hd + polys[g].lm_digits
            if coprime:
                kept.append((g, lg, True))
                continue
            redundant = False
            for jdx, (g2, lg2) in enumerate(cands):
                if jdx == idx:
                    continue
                if _divides(lg2, lg) and (lg2 != lg or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                kept.append((g, lg, False))
            else:
                stats["pairs_discarded"] += 1
        new_pairs = []
        for g, lg, coprime in kept:
            if coprime:
                stats["pairs_discarded"] += 1
            else:
                new_pairs.append(g)
        survivors = []
        for entry in pairs:
            _, lk, i, j = entry
            ld = eng.order.digits(lk)
            if (
                _divides(hd, ld)
                and _lcm_digits(polys[i].lm_digits, hd) != ld
                and _lcm_digits(polys[j].lm_digits, hd) != ld
            ):
                stats["pairs_discarded"] += 1
                continue
            survivors.append(entry)
        for g in new_pairs:
            lk = lcm_key(g, h)
            survivors.append((eng.order.degree(lk), lk, g, h))
        pairs = survivors
        eng.active = [g for g in eng.active if not _divides(hd, polys[g].lm_digits)] + [h]
        eng._reducer_cache.clear()

    for g in gens:
        rem = eng.reduce(eng.to_dict(g)) if eng.active else {k: c for k, c in eng.to_dict(g).items()}
        poly = eng.make_poly(rem)
        if poly is not None:
            add(poly)

    while pairs:
        best = min(range(len(pairs)), key=lambda t: pairs[t])
        _, _, i, j = pairs.pop(best)
        stats["pairs_reduced"] += 1
        rem = eng.reduce(eng.spoly(i, j))
        poly = eng.make_poly(rem)
        if poly is None:
            stats["zero_reductions"] += 1
            continue
        add(poly)

    # minimal basis, then interreduce tails
    active = sorted(eng.active, key=lambda g: eng.polys[g].lm)
    minimal = [
        g for g in active
        if not any(h != g and _divides(eng.polys[h].lm_digits, eng.polys[g].lm_digits) for h in active)
    ]
    eng._reducer_cache.clear()
    result = []
    for g in minimal:
        poly = eng.polys[g]
        others = [h for h in minimal if h != g]
        tail = eng.reduce(dict(poly.tail), others)
        tail[poly.lm] = 1
        eng._reducer_cache.clear()
        result.append(_from_dict(eng, tail))
    if not result:
        result = [TriPoly(prime_field(p))]
    stats["size"] = len(result)
    return GroebnerBasis(tuple(result), order, stats)


def s_polynomials_reduce_to_zero(basis: GroebnerBasis) -> bool:
    """Independent check of the Groebner property via plain TriPoly arithmetic."""
    gens = basis.generators
    order = basis.order
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            f, g = gens[a], gens[b]
            mf, mg = f.leading_monomial(order), g.leading_monomial(order)
            lcm = tuple(max(x, y) for x, y in zip(mf, mg))
            s = f.shift(tuple(x - y for x, y in zip(lcm, mf))).scale(pow(f.coefficient(mf), -1, f.field.p)) - g.shift(
                tuple(x - y for x, y in zip(lcm, mg))
            ).scale(pow(g.coefficient(mg), -1, g.field.p))
            if not _naive_normal_form(s, gens, order).is_zero():
                return False
    return True


def _naive_normal_form(f: TriPoly, gens: Sequence[TriPoly], order: str) -> TriPoly:
    """Textbook division algorithm on TriPoly values (test oracle)."""
    p = f.field.p
    lms = [(g.leading_monomial(order), g) for g in gens]
    rem = TriPoly(f.field)
    while not f.is_zero():
        m = f.leading_monomial(order)
        c = f.coefficient(m)
        for lm, g in lms:
            if all(x >= y for x, y in zip(m, lm)):
                factor = c * pow(g.coefficient(lm), -1, p) % p
                f = f - g.shift(tuple(x - y for x, y in zip(m, lm))).scale(factor)
                break
        else:
            rem = rem + TriPoly.monomial(f.field, m, c)
            f = f - TriPoly.monomial(f.field, m, c)
    return rem


@dataclass(frozen=True)
class QuotientAlgebra:
    """F_p[z1,z2,z3]/I with its standard-monomial basis.

    ``mult_matrices[l]`` is the matrix of multiplication by z_{l+1}; column s
    holds the coordinates of the normal form of z_{l+1} * staircase[s].
    """

    p: int
    staircase: tuple[tuple[int, int, int], ...]
    mult_matrices: tuple[np.ndarray, np.ndarray, np.ndarray]
    basis: GroebnerBasis

    @property
    def dimension(self) -> int:
        return len(self.staircase)


def quotient_algebra(basis: GroebnerBasis) -> QuotientAlgebra:
    p = basis.p
    if basis.is_unit():
        empty = np.zeros((0, 0), dtype=np.int64)
        return QuotientAlgebra(p, (), (empty, empty.copy(), empty.copy()), basis)
    lms = basis.leading_monomials()
    bounds = []
    for v in range(3):
        pure = [m[v] for m in lms if all(m[u] == 0 for u in range(3) if u != v)]
        if not pure:
            raise NotZeroDimensional(f"no pure power of z{v + 1} among the leading monomials")
        bounds.append(min(pure))
    staircase = [
        (a, b, c)
        for a in range(bounds[0])
        for b in range(bounds[1])
        for c in range(bounds[2])
        if not any(a >= m[0] and b >= m[1] and c >= m[2] for m in lms)
    ]
    order = _Order(basis.order)
    staircase.sort(key=order.key)
    index = {m: s for s, m in enumerate(staircase)}
    D = len(staircase)
    eng = _engine_for(basis)
    mats = []
    for v in range(3):
        M = np.zeros((D, D), dtype=np.int64)
        for s, m in enumerate(staircase):
            mm = list(m)
            mm[v] += 1
            mm = tuple(mm)
            if mm in index:
                M[index[mm], s] = 1
                continue
            nf = eng.reduce({order.key(mm): 1})
            for k, c in nf.items():
                M[index[order.exps(k)], s] = c % p
        mats.append(M)
    return QuotientAlgebra(p, tuple(staircase), tuple(mats), basis)


def elimination_min_poly(q: QuotientAlgebra, variable: int) -> UniPoly:
    """Monic generator of I ∩ F_p[z_variable].

    This is the minimal polynomial of the class of z_variable, found as the
    first linear dependence in the Krylov sequence 1, z, z^2, ... inside R/I.
    Because R/I is generated by 1 as a module over itself it coincides with
    the minimal polynomial of the multiplication matrix.
    """
    p = q.p
    F = prime_field(p)
    D = q.dimension
    if D == 0:
        return UniPoly(F, [1])
    M = q.mult_matrices[variable - 1]
    v = np.zeros(D, dtype=np.int64)
    v[q.staircase.index((0, 0, 0))] = 1
    rows: list[tuple[int, np.ndarray, np.ndarray]] = []
    for k in range(D + 1):
        r = v.copy()
        comb = np.zeros(D + 1, dtype=np.int64)
        comb[k] = 1
        for piv, row, rc in rows:
            c = r[piv]
            if c:
                r = (r - c * row) % p
                comb = (comb - c * rc) % p
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return UniPoly(F, [int(x) for x in comb[: k + 1]])
        piv = int(nz[0])
        inv = pow(int(r[piv]), -1, p)
        rows.append((piv, r * inv % p, comb * inv % p))
        v = M @ v % p
    raise AssertionError("Krylov sequence did not become dependent")  # unreachable


def matrix_poly_eval(m: UniPoly, M: np.ndarray, p: int) -> np.ndarray:
    """m(M) mod p by Horner's rule."""
    D = M.shape[0]
    out = np.zeros((D, D), dtype=np.int64)
    eye = np.eye(D, dtype=np.int64)
    for c in reversed(m.coeffs):
        out = (out @ M + c * eye) % p
    return out


def is_radical_zero_dim(q: QuotientAlgebra) -> bool:
    """Seidenberg: radical iff every elimination polynomial is squarefree."""
    return all(is_squarefree(elimination_min_poly(q, v)) for v in (1, 2, 3))
