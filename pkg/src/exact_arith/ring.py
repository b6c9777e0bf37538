"""
QuarticPell Quadratic Ring

Elements a + b*omega of Z[omega] with omega^2 = d. Throughout the toolkit
d = -t, so omega = i*sqrt(t) and the ring houses the resolvent fourth
powers xi^4 and eta^4.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import TYPE_CHECKING, Union

from src.errors import RingMismatchError

if TYPE_CHECKING:
    from src.exact_arith.interval import ComplexInterval


@dataclass(frozen=True)
class RingElem:
    """
    An element a + b*omega with omega^2 = d.

    Usage:
        omega = RingElem.omega(-2)
        x = 1 - omega
        (x ** 4).norm() == x.norm() ** 4
    """
    a: int
    b: int
    d: int

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    @classmethod
    def omega(cls, d: int) -> "RingElem":
        return cls(0, 1, d)

    @classmethod
    def scalar(cls, value: int, d: int) -> "RingElem":
        return cls(value, 0, d)

    def _lift(self, other: Union["RingElem", int]) -> "RingElem":
        if isinstance(other, RingElem):
            if other.d != self.d:
                raise RingMismatchError(
                    f"cannot combine omega^2 = {self.d} with omega^2 = {other.d}"
                )
            return other
        if isinstance(other, int):
            return RingElem(other, 0, self.d)
        return NotImplemented  # type: ignore[return-value]

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def __add__(self, other: Union["RingElem", int]) -> "RingElem":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem(-self.a, -self.b, self.d)

    def __sub__(self, other: Union["RingElem", int]) -> "RingElem":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other: int) -> "RingElem":
        return (-self) + other

    def __mul__(self, other: Union["RingElem", int]) -> "RingElem":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElem(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RingElem":
        if n < 0:
            raise ValueError("negative powers leave the ring")
        result = RingElem(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "RingElem":
        return RingElem(self.a, -self.b, self.d)

    def norm(self) -> int:
        """a^2 - d b^2; for d < 0 this is |a + b omega|^2."""
        return self.a * self.a - self.d * self.b * self.b

    def exact_div(self, k: int) -> "RingElem":
        """Divide by a rational integer that is known to divide both parts."""
        if self.a % k or self.b % k:
            raise ValueError(f"{k} does not divide {self}")
        return RingElem(self.a // k, self.b // k, self.d)

    def content(self) -> int:
        return gcd(self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_pure_omega(self) -> bool:
        return self.a == 0

    # ------------------------------------------------------------------
    # enclosures
    # ------------------------------------------------------------------
    def to_complex(self, prec: int) -> "ComplexInterval":
        """Enclosure of a + b*omega in C (d < 0) or on the real line (d >= 0)."""
        from src.exact_arith.interval import ComplexInterval, Interval

        root = Interval.exact(abs(self.d), prec).sqrt()
        if self.d < 0:
            return ComplexInterval(Interval.exact(self.a, prec), root * self.b)
        return ComplexInterval(Interval.exact(self.a, prec) + root * self.b, Interval.zero(prec))

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}w"


@dataclass(frozen=True)
class RingFraction:
    """
    num / den with num in Z[omega] and den a positive integer, in lowest terms.

    Used for exact quotients such as z = 1 - eta^4/xi^4 and the fourth power
    of Lambda_{r,1}, which need not be integral.
    """
    num: RingElem
    den: int

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ZeroDivisionError("RingFraction with zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if g > 1:
            num = RingElem(num.a // g, num.b // g, num.d)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def quotient(cls, numerator: RingElem, denominator: RingElem) -> "RingFraction":
        """numerator / denominator rationalised through the conjugate."""
        if denominator.is_zero():
            raise ZeroDivisionError("division by zero ring element")
        return cls(numerator * denominator.conjugate(), denominator.norm())

    def is_integral(self) -> bool:
        return self.den == 1

    def to_complex(self, prec: int) -> "ComplexInterval":
        enclosure = self.num.to_complex(prec)
        return enclosure.scale_by_rational(1, self.den)

    def __str__(self) -> str:
        return f"({self.num}) / {self.den}"
