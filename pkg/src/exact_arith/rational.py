"""
QuarticPell Rational Helpers

BigRat is fractions.Fraction: numerator/denominator normalised with a
positive denominator after every operation.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

BigRat = Fraction
RationalLike = Union[int, Fraction]


def as_rat(value: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and exact decimal strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(value)


def binom_rat(alpha: RationalLike, n: int) -> Fraction:
    """alpha (alpha-1) ... (alpha-n+1) / n!, exactly."""
    if n < 0:
        raise ValueError("binom_rat needs n >= 0")
    alpha = as_rat(alpha)
    numerator = Fraction(1)
    factorial = 1
    for i in range(n):
        numerator *= alpha - i
        factorial *= i + 1
    return numerator / factorial


def is_integral(q: Fraction) -> bool:
    return q.denominator == 1
