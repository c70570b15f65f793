"""Gröbner bases of ideals in Tate algebras over p-adic fields, at finite precision."""

from .buchberger import (
    SPair,
    ZeroIdealError,
    buchberger,
    buchberger_criterion,
    integral_from_rational,
    minimal_gb,
    residue_gb,
    s_poly,
    saturate_integral,
)
from .context import AlgebraContext, AtLeast, Coefficient, NotInvertibleError, PrecisionError, new_context
from .division import divide, is_member, reduce
from .f4 import MacaulayMatrix, f4, symbolic_preprocessing, tate_row_reduction
from .parsing import ParseError, format_series, parse_series, series_from_json, series_to_json
from .radii import DescentError, EtaSeries, eta_gb, eta_lift, normalize_integer_radii
from .series import LeftEtaLatticeError, TateSeries
from .term import Term, divides, gcd_term, lcm_term, skel_geq, skeleton, term_cmp

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "AtLeast",
    "buchberger",
    "buchberger_criterion",
    "Coefficient",
    "DescentError",
    "divide",
    "divides",
    "eta_gb",
    "eta_lift",
    "EtaSeries",
    "f4",
    "format_series",
    "gcd_term",
    "integral_from_rational",
    "is_member",
    "lcm_term",
    "LeftEtaLatticeError",
    "MacaulayMatrix",
    "minimal_gb",
    "new_context",
    "normalize_integer_radii",
    "NotInvertibleError",
    "parse_series",
    "ParseError",
    "PrecisionError",
    "reduce",
    "residue_gb",
    "s_poly",
    "saturate_integral",
    "series_from_json",
    "series_to_json",
    "skel_geq",
    "skeleton",
    "SPair",
    "symbolic_preprocessing",
    "tate_row_reduction",
    "TateSeries",
    "Term",
    "term_cmp",
    "ZeroIdealError",
]
