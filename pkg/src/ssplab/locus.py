"""The superspecial locus: point enumeration, Jacobian ranks and the
multiplicity-one report.

Points are found by exhaustive search over F_{p^k}^3.  For each lambda1 the
cheapest entry is evaluated on the whole (lambda2, lambda3) grid with numpy
table lookups; the remaining entries are evaluated only on its zeros.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from .cartier import cm_entries
from .field import TABLE_LIMIT, FiniteField, FqElement, build_extension, check_modulus
from .ideal import buchberger, elimination_min_poly, is_radical_zero_dim, quotient_algebra
from .poly import TriPoly, evaluate_codes

# Jacobian column order: v_{1,1}, v_{2,1}, v_{1,2}, v_{2,2}.
JACOBIAN_COLUMNS = ((1, 1), (2, 1), (1, 2), (2, 2))

DEFAULT_SCHEDULE = (2, 4)


@dataclass(frozen=True)
class LocusPoint:
    coordinates: tuple[FqElement, FqElement, FqElement]
    field_degree: int

    @property
    def codes(self) -> tuple[int, int, int]:
        return tuple(x.code for x in self.coordinates)

    @property
    def field(self) -> FiniteField:
        return self.coordinates[0].field

    def text(self) -> tuple[str, str, str]:
        return tuple(str(x) for x in self.coordinates)


@dataclass(frozen=True)
class JacobianAtPoint:
    matrix: tuple[tuple[FqElement, ...], ...]
    rank: int

    def column(self, idx: int) -> tuple[FqElement, ...]:
        return tuple(row[idx] for row in self.matrix)


def _generators(p: int) -> list[TriPoly]:
    cm = cm_entries(p, 2)
    return [cm.entry(i, j) for i, j in JACOBIAN_COLUMNS]


# -- enumeration ---------------------------------------------------------------


class _GridEvaluator:
    """Evaluates one TriPoly over F_p at many points of a small F_{p^k}."""

    def __init__(self, F: FiniteField, poly: TriPoly, powers: np.ndarray):
        self.add, self.mul = F.tables()
        q = F.q
        # coefficient of lambda2^b lambda3^c as a function of lambda1
        grouped: dict[tuple[int, int], np.ndarray] = {}
        for (a, b, c), v in poly.terms.items():
            col = self.mul[v, powers[a]]
            prev = grouped.get((b, c))
            grouped[(b, c)] = col if prev is None else self.add[prev, col]
        self.terms = sorted(grouped.items())
        self.max_c = max((c for (_, c) in grouped), default=0)
        self.powers = powers
        self.q = q

    def grid_zeros(self, x1: int) -> tuple[np.ndarray, np.ndarray]:
        """All (lambda2, lambda3) with poly(x1, lambda2, lambda3) = 0."""
        add, mul, pw = self.add, self.mul, self.powers
        q = self.q
        by_c = [np.zeros(q, dtype=np.int64) for _ in range(self.max_c + 1)]
        for (b, c), coeffs in self.terms:
            by_c[c] = add[by_c[c], mul[coeffs[x1], pw[b]]]
        lam3 = np.arange(q, dtype=np.int64)[None, :]
        acc = np.broadcast_to(by_c[self.max_c][:, None], (q, q))
        for c in range(self.max_c - 1, -1, -1):
            acc = add[mul[acc, lam3], by_c[c][:, None]]
        return np.nonzero(acc == 0)

    def values(self, x1: int, lam2: np.ndarray, lam3: np.ndarray) -> np.ndarray:
        add, mul, pw = self.add, self.mul, self.powers
        out = np.zeros(lam2.shape, dtype=np.int64)
        for (b, c), coeffs in self.terms:
            out = add[out, mul[coeffs[x1], mul[pw[b][lam2], pw[c][lam3]]]]
        return out


def _power_table(F: FiniteField, top: int) -> np.ndarray:
    _, mul = F.tables()
    pw = np.empty((top + 1, F.q), dtype=np.int64)
    pw[0] = 1
    base = np.arange(F.q, dtype=np.int64)
    for e in range(1, top + 1):
        pw[e] = mul[pw[e - 1], base]
    return pw


def enumerate_points(p: int, k: int, workers: int = 1) -> list[LocusPoint]:
    """Every (l1, l2, l3) in F_{p^k}^3 where all four entries vanish,
    sorted by the codes of the coordinates."""
    check_modulus(p)
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    F = build_extension(p, k)
    if F.q > TABLE_LIMIT:
        raise ValueError(f"F_{p}^{k} has {F.q} elements; exhaustive search is limited to {TABLE_LIMIT}")
    polys = _generators(p)
    top = max(max(max(m) for m in f.terms) if f.terms else 0 for f in polys)
    pw = _power_table(F, top)
    # cheapest first: lowest total degree, then fewest terms
    order = sorted(range(4), key=lambda t: (polys[t].total_degree(), len(polys[t]), t))
    if any(polys[t].is_zero() for t in order):
        raise ValueError("a Cartier-Manin entry is identically zero")
    evaluators = [_GridEvaluator(F, polys[t], pw) for t in order]
    first, rest = evaluators[0], evaluators[1:]

    def scan(x1_values: Sequence[int]) -> list[tuple[int, int, int]]:
        found = []
        for x1 in x1_values:
            lam2, lam3 = first.grid_zeros(x1)
            for ev in rest:
                if lam2.size == 0:
                    break
                keep = ev.values(x1, lam2, lam3) == 0
                lam2, lam3 = lam2[keep], lam3[keep]
            found.extend((x1, int(a), int(b)) for a, b in zip(lam2, lam3))
        return found

    xs = list(range(F.q))
    if workers > 1:
        chunks = [xs[w::workers] for w in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            triples = [t for part in pool.map(scan, chunks) for t in part]
    else:
        triples = scan(xs)
    triples.sort()
    return [LocusPoint(tuple(FqElement(F, c) for c in t), k) for t in triples]


# -- pointwise checks ------------------------------------------------------------


def check_branch_points(point: LocusPoint) -> bool:
    """True iff 0, 1, l1, l2, l3 are five distinct elements."""
    F = point.field
    return len({0, F.from_int(1), *point.codes}) == 5


def rank_fraction_free(F: FiniteField, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a matrix of codes by division-free elimination.

    Pivot: first row (top-down) with a nonzero entry in the current column.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        a = m[rank][col]
        for r in range(rank + 1, nrows):
            b = m[r][col]
            if b:
                m[r] = [F.sub(F.mul(a, x), F.mul(b, y)) for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


@lru_cache(maxsize=None)
def _jacobian_polys(p: int) -> tuple[tuple[TriPoly, ...], ...]:
    gens = _generators(p)
    return tuple(tuple(g.partial_derivative(ell) for g in gens) for ell in (1, 2, 3))


def jacobian_at(p: int, point: LocusPoint | Sequence[FqElement]) -> JacobianAtPoint:
    """3x4 matrix d c / d z_l at the point; columns (c_{p-1}, c_{2p-1}, c_{p-2}, c_{2p-2})."""
    coords = point.coordinates if isinstance(point, LocusPoint) else tuple(point)
    F = coords[0].field
    xs = [x.code for x in coords]
    codes = [[evaluate_codes(d, F, xs) for d in row] for row in _jacobian_polys(p)]
    matrix = tuple(tuple(FqElement(F, c) for c in row) for row in codes)
    return JacobianAtPoint(matrix, rank_fraction_free(F, codes))


def column_pair_ranks(jac: JacobianAtPoint) -> tuple[int, int]:
    """Ranks of (v_{1,1}, v_{2,1}) and (v_{1,2}, v_{2,2})."""
    F = jac.matrix[0][0].field
    codes = [[x.code for x in row] for row in jac.matrix]
    first = rank_fraction_free(F, [row[0:2] for row in codes])
    second = rank_fraction_free(F, [row[2:4] for row in codes])
    return first, second


def contiguity_combinations(point: LocusPoint, jac: JacobianAtPoint) -> tuple[list[FqElement], list[FqElement]]:
    """The row combinations sum (1 - l_k) w_k and sum (l_k - l_k^2) w_k."""
    lam = point.coordinates
    first, second = [], []
    for col in range(4):
        s1 = sum(((1 - lam[k]) * jac.matrix[k][col] for k in range(3)), lam[0] * 0)
        s2 = sum(((lam[k] - lam[k] * lam[k]) * jac.matrix[k][col] for k in range(3)), lam[0] * 0)
        first.append(s1)
        second.append(s2)
    return first, second


def expectation_values(p: int, point: LocusPoint | Sequence[FqElement]) -> list[FqElement]:
    """d_i c_{p-1} * d_i c_{2p-2} - d_i c_{2p-1} * d_i c_{p-2} for i = 1, 2, 3."""
    jac = jacobian_at(p, point)
    return [row[0] * row[3] - row[1] * row[2] for row in jac.matrix]


# -- reports ---------------------------------------------------------------------


@dataclass
class LocusReport:
    p: int
    extension_degrees: list[int]
    points: list[LocusPoint]
    jacobians: list[JacobianAtPoint]
    quotient_dim: int
    groebner_size: int
    min_poly_degrees: list[int]
    radical: bool
    ranks_all_three: bool
    pair_ranks_ok: bool
    branch_points_ok: bool
    expectation_ok: bool
    counts_match: bool
    notes: list[str] = field(default_factory=list)

    @property
    def incomplete_enumeration(self) -> bool:
        return not self.counts_match

    @property
    def passed(self) -> bool:
        return (
            self.radical
            and self.ranks_all_three
            and self.pair_ranks_ok
            and self.branch_points_ok
            and self.counts_match
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "extension_degrees": self.extension_degrees,
            "groebner_size": self.groebner_size,
            "quotient_dim": self.quotient_dim,
            "min_poly_degrees": self.min_poly_degrees,
            "point_count": len(self.points),
            "radical": self.radical,
            "ranks_all_three": self.ranks_all_three,
            "pair_ranks_ok": self.pair_ranks_ok,
            "branch_points_ok": self.branch_points_ok,
            "expectation_ok": self.expectation_ok,
            "counts_match": self.counts_match,
            "incomplete_enumeration": self.incomplete_enumeration,
            "pass": self.passed,
            "notes": self.notes,
        }

    def csv_rows(self) -> list[list]:
        k = self.extension_degrees[-1] if self.extension_degrees else 0
        return [
            [self.p, pt.field_degree or k, *pt.text(), jac.rank]
            for pt, jac in zip(self.points, self.jacobians)
        ]


@dataclass(frozen=True)
class IdealSummary:
    groebner_size: int
    quotient_dim: int
    radical: bool
    min_poly_degrees: tuple[int, ...]


@lru_cache(maxsize=None)
def ideal_summary(p: int) -> IdealSummary:
    basis = buchberger(_generators(p))
    q = quotient_algebra(basis)
    degrees = tuple(int(elimination_min_poly(q, v).degree) for v in (1, 2, 3))
    return IdealSummary(len(basis), q.dimension, is_radical_zero_dim(q), degrees)


def locus_points(
    p: int, k_schedule: Sequence[int] = DEFAULT_SCHEDULE, target: int | None = None, workers: int = 1
) -> tuple[list[LocusPoint], list[int], bool, list[str]]:
    """Enumerate over each degree in the schedule until the count reaches
    ``target`` (the quotient dimension unless given)."""
    schedule = list(k_schedule)
    if not schedule or any(k < 1 for k in schedule) or schedule != sorted(set(schedule)):
        raise ValueError("k_schedule must be a nonempty strictly increasing sequence of degrees >= 1")
    if target is None:
        target = ideal_summary(p).quotient_dim
    searched: list[int] = []
    notes: list[str] = []
    points: list[LocusPoint] = []
    for k in schedule:
        if p**k > TABLE_LIMIT:
            notes.append(f"skipped k={k}: F_{p}^{k} too large for exhaustive search")
            continue
        points = enumerate_points(p, k, workers=workers)
        searched.append(k)
        if len(points) == target:
            return points, searched, True, notes
    return points, searched, False, notes


def verify_multiplicity_one(p: int, k_schedule: Sequence[int] = DEFAULT_SCHEDULE, workers: int = 1) -> LocusReport:
    check_modulus(p)
    summary = ideal_summary(p)
    points, searched, complete, notes = locus_points(p, k_schedule, summary.quotient_dim, workers)
    if not complete:
        notes.append(
            f"IncompleteEnumeration: found {len(points)} points, quotient dimension {summary.quotient_dim}"
        )
    jacobians = [jacobian_at(p, pt) for pt in points]
    ranks_ok = all(j.rank == 3 for j in jacobians)
    pairs_ok = all(column_pair_ranks(j) == (2, 2) for j in jacobians)
    branch_ok = all(check_branch_points(pt) for pt in points)
    expectation_ok = all(
        all(v == 0 for v in (row[0] * row[3] - row[1] * row[2] for row in j.matrix)) for j in jacobians
    )
    return LocusReport(
        p=p,
        extension_degrees=searched,
        points=points,
        jacobians=jacobians,
        quotient_dim=summary.quotient_dim,
        groebner_size=summary.groebner_size,
        min_poly_degrees=list(summary.min_poly_degrees),
        radical=summary.radical,
        ranks_all_three=ranks_ok,
        pair_ranks_ok=pairs_ok,
        branch_points_ok=branch_ok,
        expectation_ok=expectation_ok,
        counts_match=complete,
        notes=notes,
    )


def check_expectation(
    p: int, points: Sequence[LocusPoint] | None = None, k_schedule: Sequence[int] = DEFAULT_SCHEDULE
) -> dict:
    """Evaluate the three determinant-like expressions at every locus point.

    A nonzero value is a finding about the conjecture, not an error: the
    report always completes and carries PASS/FAIL per point.
    """
    check_modulus(p)
    complete = None
    if points is None:
        points, _, complete, _ = locus_points(p, k_schedule)
    rows = []
    for pt in points:
        vals = expectation_values(p, pt)
        rows.append(
            {
                "point": list(pt.text()),
                "values": [str(v) for v in vals],
                "status": "PASS" if all(v == 0 for v in vals) else "FAIL",
            }
        )
    return {
        "p": p,
        "point_count": len(rows),
        "enumeration_complete": complete,
        "status": "PASS" if all(r["status"] == "PASS" for r in rows) else "FAIL",
        "points": rows,
    }


def galois_orbit_closed(points: Sequence[LocusPoint]) -> bool:
    """Is the point set stable under coordinatewise Frobenius and all
    permutations of the coordinates?"""
    if not points:
        return True
    F = points[0].field
    codes = {pt.codes for pt in points}
    for c in codes:
        if tuple(F.frobenius(x) for x in c) not in codes:
            return False
        if any(perm not in codes for perm in permutations(c)):
            return False
    return True


__all__ = [
    "JACOBIAN_COLUMNS",
    "LocusPoint",
    "JacobianAtPoint",
    "LocusReport",
    "check_branch_points",
    "check_expectation",
    "enumerate_points",
    "jacobian_at",
    "verify_multiplicity_one",
]
