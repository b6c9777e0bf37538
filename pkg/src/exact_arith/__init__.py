"""
QuarticPell Exact Arithmetic Kernel

Integers, rationals, the quadratic ring Z[omega], polynomials, binary forms
and dyadic interval enclosures. All values are immutable.
"""
from .rational import BigRat, RationalLike, as_rat, binom_rat, is_integral
from .squares import integer_root, is_perfect_square, passes_residue_filter
from .ring import RingElem, RingFraction
from .poly import IntForm, RatPoly, format_monomial, quarter_root_series
from .interval import (
    ComplexInterval,
    Interval,
    decimal_str,
    interval_from_sqrt,
    pi_interval,
    pow_rat,
    refine,
)

__all__ = [
    "BigRat",
    "RationalLike",
    "as_rat",
    "binom_rat",
    "is_integral",
    "integer_root",
    "is_perfect_square",
    "passes_residue_filter",
    "RingElem",
    "RingFraction",
    "IntForm",
    "RatPoly",
    "format_monomial",
    "quarter_root_series",
    "ComplexInterval",
    "Interval",
    "decimal_str",
    "interval_from_sqrt",
    "pi_interval",
    "pow_rat",
    "refine",
]
