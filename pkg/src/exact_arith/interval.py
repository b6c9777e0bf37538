"""
QuarticPell Interval Arithmetic

Rigorous enclosures with dyadic endpoints. Every operation computes the exact
rational result on the endpoints and rounds it outward to the working
precision, so the true value is always contained.

Comparisons are three-valued: True, False, or None when the enclosure
straddles the threshold. Callers that need a decision raise UndecidedError
and are retried by refine() at doubled precision.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, TypeVar, Union

from mpmath import mp

from src.errors import PreconditionError, UndecidedError
from src.exact_arith.rational import as_rat
from src.exact_arith.squares import integer_root
from src.observability import get_logger

DEFAULT_PREC = 128
PI_CACHE_BITS = 4096 + 64

Number = Union[int, Fraction]
T = TypeVar("T")


# =============================================================================
# DYADIC ROUNDING
# =============================================================================
def _exponent(q: Fraction) -> int:
    """Approximately log2|q| (exact up to one unit)."""
    return abs(q.numerator).bit_length() - q.denominator.bit_length()


def round_down(q: Fraction, prec: int) -> Fraction:
    """Largest dyadic rational with about prec significant bits that is <= q."""
    if q == 0:
        return Fraction(0)
    den = q.denominator
    if den & (den - 1) == 0 and abs(q.numerator).bit_length() <= prec:
        return q
    shift = prec - _exponent(q)
    if shift >= 0:
        return Fraction((q.numerator << shift) // den, 1 << shift)
    return Fraction((q.numerator // (den << -shift)) << -shift)


def round_up(q: Fraction, prec: int) -> Fraction:
    return -round_down(-q, prec)


def root_bounds(q: Fraction, k: int, prec: int) -> tuple[Fraction, Fraction]:
    """Dyadic lo <= q^(1/k) <= hi for q >= 0, relative width about 2^-(prec+2)."""
    if q < 0:
        raise PreconditionError("root of a negative number")
    if q == 0:
        return Fraction(0), Fraction(0)
    scale_bits = max(prec - _exponent(q) // k, 0) + 2
    scaled, rem = divmod(q.numerator << (k * scale_bits), q.denominator)
    root, exact = integer_root(scaled, k)
    lo = Fraction(root, 1 << scale_bits)
    if exact and rem == 0:
        return lo, lo
    return lo, Fraction(root + 1, 1 << scale_bits)


def decimal_str(q: Fraction, digits: int = 30, upward: bool = False) -> str:
    """Directed-rounding decimal rendering of an exact rational."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_CEILING if upward else ROUND_FLOOR
        return str(Decimal(q.numerator) / Decimal(q.denominator))


# =============================================================================
# REAL INTERVALS
# =============================================================================
@dataclass(frozen=True)
class Interval:
    """
    A closed interval [lo, hi] with dyadic endpoints.

    Usage:
        x = Interval.exact(2, prec=128).sqrt()
        y = x * x - 2
        y.contains(0)          # True
        (x - 1).is_positive()  # True
    """
    lo: Fraction
    hi: Fraction
    prec: int = DEFAULT_PREC

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    @classmethod
    def _outward(cls, lo: Fraction, hi: Fraction, prec: int) -> "Interval":
        return cls(round_down(lo, prec), round_up(hi, prec), prec)

    @classmethod
    def exact(cls, value: Number, prec: int = DEFAULT_PREC) -> "Interval":
        q = as_rat(value)
        return cls._outward(q, q, prec)

    @classmethod
    def zero(cls, prec: int = DEFAULT_PREC) -> "Interval":
        return cls(Fraction(0), Fraction(0), prec)

    @classmethod
    def hull(cls, lo: Number, hi: Number, prec: int = DEFAULT_PREC) -> "Interval":
        return cls._outward(as_rat(lo), as_rat(hi), prec)

    def _lift(self, other: Union["Interval", Number]) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.exact(other, self.prec)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def __add__(self, other: Union["Interval", Number]) -> "Interval":
        o = self._lift(other)
        prec = max(self.prec, o.prec)
        return Interval._outward(self.lo + o.lo, self.hi + o.hi, prec)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other: Union["Interval", Number]) -> "Interval":
        return self + (-self._lift(other))

    def __rsub__(self, other: Number) -> "Interval":
        return (-self) + other

    def __mul__(self, other: Union["Interval", Number]) -> "Interval":
        o = self._lift(other)
        prec = max(self.prec, o.prec)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval._outward(min(products), max(products), prec)

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise UndecidedError("reciprocal of an interval containing zero", self.prec)
        return Interval._outward(1 / self.hi, 1 / self.lo, self.prec)

    def __truediv__(self, other: Union["Interval", Number]) -> "Interval":
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other: Number) -> "Interval":
        return self.reciprocal() * other

    def __pow__(self, n: int) -> "Interval":
        if n < 0:
            return (self ** -n).reciprocal()
        if n == 0:
            return Interval.exact(1, self.prec)
        lo_n, hi_n = self.lo ** n, self.hi ** n
        if n % 2 == 1 or self.lo >= 0:
            return Interval._outward(lo_n, hi_n, self.prec)
        if self.hi <= 0:
            return Interval._outward(hi_n, lo_n, self.prec)
        return Interval._outward(Fraction(0), max(lo_n, hi_n), self.prec)

    def __abs__(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi), self.prec)

    def clamp_nonnegative(self) -> "Interval":
        """Intersect with [0, inf); only valid when the true value is known >= 0."""
        if self.hi < 0:
            raise PreconditionError("interval lies entirely below zero")
        return Interval(max(self.lo, Fraction(0)), self.hi, self.prec)

    def root(self, k: int) -> "Interval":
        if self.hi < 0:
            raise PreconditionError("even root of a negative interval")
        if self.lo < 0:
            raise UndecidedError("root of an interval straddling zero", self.prec)
        guard = self.prec + 4
        lo, _ = root_bounds(self.lo, k, self.prec)
        _, hi = root_bounds(self.hi, k, self.prec)
        return Interval._outward(lo, hi, guard).with_prec(self.prec)

    def sqrt(self) -> "Interval":
        return self.root(2)

    def pow_frac(self, exponent: Number) -> "Interval":
        """self ** (p/q) for positive self (nonnegative when p >= 0)."""
        e = as_rat(exponent)
        p, q = e.numerator, e.denominator
        if p >= 0:
            base = self ** p
            return base if q == 1 else base.root(q)
        if self.lo <= 0:
            raise UndecidedError("negative power of an interval touching zero", self.prec)
        return self.pow_frac(-e).reciprocal()

    def with_prec(self, prec: int) -> "Interval":
        return Interval(self.lo, self.hi, prec)

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Number) -> bool:
        q = as_rat(value)
        return self.lo <= q <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def lt(self, other: Union["Interval", Number]) -> Optional[bool]:
        """Three-valued self < other."""
        o = self._lift(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None

    def gt(self, other: Union["Interval", Number]) -> Optional[bool]:
        o = self._lift(other)
        if self.lo > o.hi:
            return True
        if self.hi <= o.lo:
            return False
        return None

    def require_lt(self, other: Union["Interval", Number], context: str) -> None:
        verdict = self.lt(other)
        if verdict is None:
            raise UndecidedError(context, self.prec)
        if not verdict:
            raise AssertionError(context)

    def describe(self, digits: int = 25) -> dict[str, str]:
        return {
            "lo": decimal_str(self.lo, digits),
            "hi": decimal_str(self.hi, digits, upward=True),
        }

    def __repr__(self) -> str:
        d = self.describe(12)
        return f"Interval([{d['lo']}, {d['hi']}], prec={self.prec})"


# =============================================================================
# COMPLEX (RECTANGULAR) INTERVALS
# =============================================================================
@dataclass(frozen=True)
class ComplexInterval:
    """A rectangle re + i*im enclosing a complex number."""
    re: Interval
    im: Interval

    @classmethod
    def exact(cls, re: Number, im: Number = 0, prec: int = DEFAULT_PREC) -> "ComplexInterval":
        return cls(Interval.exact(re, prec), Interval.exact(im, prec))

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def _lift(self, other: Union["ComplexInterval", Interval, Number]) -> "ComplexInterval":
        if isinstance(other, ComplexInterval):
            return other
        if isinstance(other, Interval):
            return ComplexInterval(other, Interval.zero(other.prec))
        return ComplexInterval.exact(other, 0, self.prec)

    def __add__(self, other):
        o = self._lift(other)
        return ComplexInterval(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return ComplexInterval(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ComplexInterval":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = ComplexInterval.exact(1, 0, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def abs2(self) -> Interval:
        return self.re ** 2 + self.im ** 2

    def __abs__(self) -> Interval:
        return self.abs2().sqrt()

    def reciprocal(self) -> "ComplexInterval":
        den = self.abs2()
        if den.contains_zero():
            raise UndecidedError("reciprocal of a complex interval near zero", self.prec)
        return ComplexInterval(self.re / den, -self.im / den)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def scale_by_rational(self, p: int, q: int) -> "ComplexInterval":
        factor = Fraction(p, q)
        return ComplexInterval(self.re * factor, self.im * factor)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def sqrt(self) -> "ComplexInterval":
        """Principal square root (real part >= 0); undecided on the branch cut."""
        modulus = abs(self)
        re_part = ((modulus + self.re) / 2).clamp_nonnegative().sqrt()
        if re_part.is_positive():
            return ComplexInterval(re_part, self.im / (re_part * 2))
        if self.re.is_negative():
            im_abs = ((modulus - self.re) / 2).clamp_nonnegative().sqrt()
            if self.im.lo >= 0:
                im_part = im_abs
            elif self.im.is_negative():
                im_part = -im_abs
            else:
                raise UndecidedError("square root on the negative real axis", self.prec)
            return ComplexInterval(self.im / (im_part * 2), im_part)
        raise UndecidedError("square root near zero", self.prec)

    def fourth_root(self) -> "ComplexInterval":
        """Principal fourth root: argument in (-pi/4, pi/4]."""
        return self.sqrt().sqrt()

    def describe(self, digits: int = 25) -> dict[str, dict[str, str]]:
        return {"re": self.re.describe(digits), "im": self.im.describe(digits)}


# =============================================================================
# CONSTANTS AND HELPERS
# =============================================================================
@lru_cache(maxsize=1)
def _pi_reference() -> tuple[Fraction, Fraction]:
    with mp.workprec(PI_CACHE_BITS):
        value = +mp.pi
    man, exp = int(value.man), int(value.exp)
    ulp = Fraction(2) ** exp
    # mpmath rounds pi correctly, so one ulp either side encloses it
    return (man - 1) * ulp, (man + 1) * ulp


@lru_cache(maxsize=64)
def pi_interval(prec: int = DEFAULT_PREC) -> Interval:
    lo, hi = _pi_reference()
    return Interval._outward(lo, hi, prec)


def interval_from_sqrt(n: int, bits: int = DEFAULT_PREC) -> Interval:
    """Enclosure of sqrt(n) with relative width at most 2^-bits."""
    if n < 0:
        raise PreconditionError("interval_from_sqrt needs n >= 0")
    return Interval.exact(n, bits + 2).sqrt().with_prec(bits)


def pow_rat(base: Number, exponent: Number, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of base ** exponent for a positive rational base."""
    return Interval.exact(base, prec).pow_frac(exponent)


def refine(
    compute: Callable[[int], T],
    *,
    start_bits: int = DEFAULT_PREC,
    max_bits: int = 4096,
    context: str = "",
) -> T:
    """
    Run compute(bits) on the precision ladder start_bits, 2*start_bits, ...

    compute raises UndecidedError when an enclosure is too wide to decide a
    comparison; the last UndecidedError propagates once max_bits is spent.
    """
    bits = start_bits
    started = time.perf_counter()
    while True:
        try:
            return compute(bits)
        except UndecidedError as exc:
            if bits >= max_bits:
                exc.bits = bits
                raise
            get_logger("interval").debug(
                "precision_escalated",
                context=context or exc.context,
                from_bits=bits,
                to_bits=min(bits * 2, max_bits),
                duration_ms=(time.perf_counter() - started) * 1000,
            )
            bits = min(bits * 2, max_bits)
