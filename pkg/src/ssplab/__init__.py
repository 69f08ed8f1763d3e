"""ssplab: exact arithmetic for the superspecial locus of genus-2 curves
y^2 = x(x-1)(x-z1)(x-z2)(x-z3) over finite fields."""

from .cartier import cm_entries, hasse_polynomial, igusa_separability_scan
from .field import FiniteField, FpElement, FqElement, build_extension, prime_field
from .ideal import buchberger, is_radical_zero_dim, quotient_algebra
from .lauricella import cm_via_hypergeometric, truncated_series
from .locus import check_expectation, enumerate_points, jacobian_at, verify_multiplicity_one
from .poly import TriPoly, UniPoly

__version__ = "0.1.0"

__all__ = [
    "FiniteField",
    "FpElement",
    "FqElement",
    "TriPoly",
    "UniPoly",
    "build_extension",
    "buchberger",
    "check_expectation",
    "cm_entries",
    "cm_via_hypergeometric",
    "enumerate_points",
    "hasse_polynomial",
    "igusa_separability_scan",
    "is_radical_zero_dim",
    "jacobian_at",
    "prime_field",
    "quotient_algebra",
    "truncated_series",
    "verify_multiplicity_one",
]
