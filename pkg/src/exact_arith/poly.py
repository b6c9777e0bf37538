"""
QuarticPell Polynomials

Dense univariate polynomials over exact rationals (RatPoly) and homogeneous
binary forms over the integers (IntForm). Coefficient index = degree of the
monomial; for IntForm index i stands for x^(n-i) y^i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Iterable, Optional, Union

from src.exact_arith.rational import RationalLike, as_rat, binom_rat

if TYPE_CHECKING:
    from src.exact_arith.interval import ComplexInterval


def _strip(values: Iterable[Fraction]) -> tuple[Fraction, ...]:
    coeffs = list(values)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _term(coef: Any, var: str, power: int) -> str:
    if power == 0:
        return str(coef)
    mono = var if power == 1 else f"{var}^{power}"
    if coef == 1:
        return mono
    if coef == -1:
        return f"-{mono}"
    return f"{coef}{mono}"


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# =============================================================================
# RATIONAL POLYNOMIALS
# =============================================================================
@dataclass(frozen=True)
class RatPoly:
    """
    A polynomial c_0 + c_1 z + ... + c_n z^n with Fraction coefficients.

    Trailing zeros are stripped on construction; the zero polynomial has
    degree -1.

    Usage:
        p = RatPoly.of(2, Fraction(-5, 4))     # 2 - 5z/4
        q = p * p - RatPoly.of(4)
        q.monomial()                           # None: two terms survive
    """
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(as_rat(c) for c in self.coeffs))

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    @classmethod
    def of(cls, *values: RationalLike) -> "RatPoly":
        return cls(tuple(as_rat(v) for v in values))

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def constant(cls, value: RationalLike) -> "RatPoly":
        return cls((as_rat(value),))

    @classmethod
    def z(cls) -> "RatPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def term(cls, power: int, coef: RationalLike = 1) -> "RatPoly":
        return cls((Fraction(0),) * power + (as_rat(coef),))

    def _lift(self, other: Union["RatPoly", RationalLike]) -> "RatPoly":
        if isinstance(other, RatPoly):
            return other
        return RatPoly.constant(other)

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def truncate(self, n: int) -> "RatPoly":
        """Keep the monomials of degree < n."""
        return RatPoly(self.coeffs[:n])

    def monomial(self) -> Optional[tuple[int, Fraction]]:
        """(k, c) if the polynomial is exactly c z^k with c != 0, else None."""
        nonzero = [(i, c) for i, c in enumerate(self.coeffs) if c != 0]
        if len(nonzero) != 1:
            return None
        return nonzero[0]

    def lowest_term(self) -> Optional[tuple[int, Fraction]]:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i, c
        return None

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def __add__(self, other: Union["RatPoly", RationalLike]) -> "RatPoly":
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return RatPoly(tuple(self.coefficient(i) + o.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["RatPoly", RationalLike]) -> "RatPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: RationalLike) -> "RatPoly":
        return (-self) + other

    def __mul__(self, other: Union["RatPoly", RationalLike]) -> "RatPoly":
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return RatPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return RatPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative polynomial powers are not supported")
        result = RatPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_truncated(self, other: "RatPoly", n: int) -> "RatPoly":
        """(self * other) mod z^n, skipping the discarded products."""
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                out[i + j] += a * b
        return RatPoly(tuple(out))

    def compose(self, inner: "RatPoly") -> "RatPoly":
        """self(inner(z)) by Horner's scheme."""
        result = RatPoly.zero()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    # ------------------------------------------------------------------
    # evaluation
    # ------------------------------------------------------------------
    def __call__(self, value: RationalLike) -> Fraction:
        q = as_rat(value)
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * q + c
        return result

    def eval_gaussian(self, re: RationalLike, im: RationalLike) -> tuple[Fraction, Fraction]:
        """Exact value at the Gaussian rational re + i*im, as (real, imag)."""
        zr, zi = as_rat(re), as_rat(im)
        vr, vi = Fraction(0), Fraction(0)
        for c in reversed(self.coeffs):
            vr, vi = vr * zr - vi * zi + c, vr * zi + vi * zr
        return vr, vi

    def eval_complex(self, z: "ComplexInterval") -> "ComplexInterval":
        from src.exact_arith.interval import ComplexInterval

        result = ComplexInterval.exact(0, 0, z.prec)
        for c in reversed(self.coeffs):
            result = result * z + c
        return result

    # ------------------------------------------------------------------
    # forms
    # ------------------------------------------------------------------
    def homogenize(self, degree: Optional[int] = None) -> "IntForm":
        """x^n p(y/x) as an integer form; n defaults to deg p."""
        n = self.degree if degree is None else degree
        if n < self.degree:
            raise ValueError("homogenizing degree below the polynomial degree")
        if not self.is_integral():
            raise ValueError("homogenize needs integral coefficients")
        return IntForm(tuple(int(self.coefficient(i)) for i in range(n + 1)))

    def __str__(self) -> str:
        return _join([_term(c, "z", i) for i, c in enumerate(self.coeffs) if c != 0])


def quarter_root_series(order: int) -> RatPoly:
    """Maclaurin series of (1 - z)^(1/4) through z^order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    quarter = Fraction(1, 4)
    return RatPoly(tuple(binom_rat(quarter, m) * (-1) ** m for m in range(order + 1)))


# =============================================================================
# INTEGER BINARY FORMS
# =============================================================================
@dataclass(frozen=True)
class IntForm:
    """
    A homogeneous binary form sum c_i x^(n-i) y^i with integer coefficients.

    Usage:
        P = IntForm((1, 4 * t, -6 * t, -4 * t * t, t * t))
        P(1, 0) == 1
    """
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a form needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, degree: int) -> "IntForm":
        return cls((0,) * (degree + 1))

    @classmethod
    def from_poly(cls, poly: RatPoly, degree: Optional[int] = None) -> "IntForm":
        return poly.homogenize(degree)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x: Any, y: Any) -> Any:
        n = self.degree
        x_pows = [1]
        y_pows = [1]
        for _ in range(n):
            x_pows.append(x_pows[-1] * x)
            y_pows.append(y_pows[-1] * y)
        total: Any = 0
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + c * x_pows[n - i] * y_pows[i]
        return total

    def _same_degree(self, other: "IntForm") -> None:
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "IntForm") -> "IntForm":
        self._same_degree(other)
        return IntForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "IntForm":
        return IntForm(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntForm") -> "IntForm":
        return self + (-other)

    def __mul__(self, other: Union["IntForm", int]) -> "IntForm":
        if isinstance(other, int):
            return IntForm(tuple(c * other for c in self.coeffs))
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntForm(tuple(out))

    __rmul__ = __mul__

    def monomial(self) -> Optional[tuple[int, int, int]]:
        """(coef, x_exponent, y_exponent) for a single-term form, else None."""
        nonzero = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if len(nonzero) != 1:
            return None
        i, c = nonzero[0]
        return c, self.degree - i, i

    def __str__(self) -> str:
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = _monomial_str(n - i, i)
            if not mono:
                terms.append(str(c))
            elif c in (1, -1):
                terms.append(("-" if c < 0 else "") + mono)
            else:
                terms.append(f"{c}{mono}")
        return _join(terms)


def _monomial_str(x_exp: int, y_exp: int) -> str:
    parts = []
    for var, e in (("x", x_exp), ("y", y_exp)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(parts)


def format_monomial(coef: int, x_exp: int, y_exp: int) -> str:
    return f"{coef}{_monomial_str(x_exp, y_exp)}"
