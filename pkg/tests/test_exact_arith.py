"""
Tests for QuarticPell Exact Arithmetic Kernel
"""

import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

from src.errors import RingMismatchError, UndecidedError
from src.exact_arith import (
    ComplexInterval,
    IntForm,
    Interval,
    RatPoly,
    RingElem,
    RingFraction,
    as_rat,
    binom_rat,
    decimal_str,
    integer_root,
    is_perfect_square,
    passes_residue_filter,
    pi_interval,
    pow_rat,
    quarter_root_series,
    refine,
)


# =============================================================================
# SQUARES AND RATIONALS
# =============================================================================
class TestSquares:
    """Tests for perfect-square detection."""

    @pytest.mark.parametrize("n, root", [(0, 0), (1, 1), (144, 12), (169, 13)])
    def test_squares(self, n, root):
        """Test small squares return their root."""
        assert is_perfect_square(n) == root

    @pytest.mark.parametrize("n", [2, 145, 168, -4])
    def test_non_squares(self, n):
        """Test non-squares and negatives return None."""
        assert is_perfect_square(n) is None

    def test_large_square(self):
        """Test a square far beyond float range."""
        root = 10 ** 40 + 7
        assert is_perfect_square(root * root) == root
        assert is_perfect_square(root * root + 1) is None

    def test_residue_filter_never_rejects_squares(self):
        """Test the filter passes every square."""
        assert all(passes_residue_filter(k * k) for k in range(2000))

    def test_integer_root(self):
        """Test exact and inexact integer roots."""
        assert integer_root(81, 4) == (3, True)
        assert integer_root(80, 4) == (2, False)

    def test_integer_root_negative(self):
        """Test negative radicands are rejected."""
        with pytest.raises(ValueError):
            integer_root(-1, 2)


class TestRationals:
    """Tests for rational helpers."""

    def test_as_rat_string(self):
        """Test exact strings are accepted."""
        assert as_rat("3/4") == Fraction(3, 4)

    def test_as_rat_rejects_float(self):
        """Test floats are refused as inexact."""
        with pytest.raises(TypeError):
            as_rat(0.25)

    def test_binom_rat(self):
        """Test generalized binomial coefficients of 1/4."""
        assert binom_rat(Fraction(1, 4), 0) == 1
        assert binom_rat(Fraction(1, 4), 1) == Fraction(1, 4)
        assert binom_rat(Fraction(1, 4), 2) == Fraction(-3, 32)


# =============================================================================
# QUADRATIC RING
# =============================================================================
class TestRingElem:
    """Tests for Z[omega] arithmetic."""

    @pytest.fixture
    def omega(self):
        """omega with omega^2 = -2."""
        return RingElem.omega(-2)

    def test_omega_squared(self, omega):
        """Test omega^2 equals d."""
        assert omega * omega == RingElem.scalar(-2, -2)

    def test_norm_multiplicative(self, omega):
        """Test N(x^4) = N(x)^4."""
        x = 1 - omega
        assert x.norm() == 3
        assert (x ** 4).norm() == 81

    def test_norm_multiplicative_random(self):
        """Test N(xy) = N(x) N(y) on 1000 seeded random pairs."""
        rng = random.Random(11)
        for _ in range(1000):
            d = -rng.randint(1, 10 ** 6)
            x = RingElem(rng.randint(-10 ** 9, 10 ** 9), rng.randint(-10 ** 9, 10 ** 9), d)
            y = RingElem(rng.randint(-10 ** 9, 10 ** 9), rng.randint(-10 ** 9, 10 ** 9), d)
            assert (x * y).norm() == x.norm() * y.norm()

    def test_conjugate_product_is_norm(self, omega):
        """Test x * conj(x) is the rational norm."""
        x = 3 + 5 * omega
        assert x * x.conjugate() == RingElem.scalar(x.norm(), -2)

    def test_mismatched_rings(self, omega):
        """Test combining different omega^2 raises."""
        with pytest.raises(RingMismatchError):
            omega + RingElem.omega(-3)

    def test_exact_div(self):
        """Test division by a common factor."""
        assert RingElem(6, -4, -5).exact_div(2) == RingElem(3, -2, -5)
        with pytest.raises(ValueError):
            RingElem(6, 3, -5).exact_div(2)

    def test_predicates(self):
        """Test rational and pure-omega predicates."""
        assert RingElem(4, 0, -1).is_rational()
        assert RingElem(0, 7, -1).is_pure_omega()
        assert RingElem(0, 0, -1).is_zero()

    def test_to_complex(self):
        """Test the enclosure of 1 + sqrt(-2)."""
        z = RingElem(1, 1, -2).to_complex(128)
        assert z.re.contains(1)
        assert (z.im ** 2).contains(2)


class TestRingFraction:
    """Tests for exact ring quotients."""

    def test_self_quotient_is_one(self):
        """Test x / x reduces to 1."""
        x = RingElem(3, 5, -7)
        q = RingFraction.quotient(x, x)
        assert q.is_integral()
        assert q.num == RingElem(1, 0, -7)

    def test_lowest_terms(self):
        """Test common content is cancelled and the sign normalised."""
        q = RingFraction(RingElem(4, 6, -1), -8)
        assert q.num == RingElem(-2, -3, -1)
        assert q.den == 4

    def test_zero_denominator(self):
        """Test a zero denominator raises."""
        with pytest.raises(ZeroDivisionError):
            RingFraction(RingElem(1, 0, -1), 0)


# =============================================================================
# POLYNOMIALS AND FORMS
# =============================================================================
class TestRatPoly:
    """Tests for rational polynomials."""

    def test_square(self):
        """Test (1 + z)^2."""
        assert (RatPoly.of(1, 1) ** 2).coeffs == (1, 2, 1)

    def test_trailing_zeros_stripped(self):
        """Test degree ignores zero leading coefficients."""
        assert RatPoly.of(1, 0, 0).degree == 0
        assert RatPoly.zero().degree == -1

    def test_monomial(self):
        """Test monomial detection."""
        assert RatPoly.term(3, Fraction(-5, 2)).monomial() == (3, Fraction(-5, 2))
        assert RatPoly.of(1, 1).monomial() is None

    def test_compose(self):
        """Test p(1 - z) for p = z^2."""
        p = RatPoly.term(2)
        assert p.compose(RatPoly.of(1, -1)).coeffs == (1, -2, 1)

    def test_evaluation(self):
        """Test exact evaluation at rationals and Gaussian rationals."""
        p = RatPoly.of(1, 0, 1)
        assert p(Fraction(1, 2)) == Fraction(5, 4)
        assert p.eval_gaussian(0, 1) == (0, 0)

    def test_quarter_root_series(self):
        """Test the first coefficients of (1 - z)^(1/4)."""
        s = quarter_root_series(2)
        assert s.coeffs == (1, Fraction(-1, 4), Fraction(-3, 32))

    def test_quarter_root_fourth_power(self):
        """Test the truncated series to the fourth power is 1 - z."""
        s = quarter_root_series(6)
        sq = s.mul_truncated(s, 7)
        assert sq.mul_truncated(sq, 7) == RatPoly.of(1, -1)

    def test_homogenize(self):
        """Test 1 + 2z as a quadratic form."""
        assert RatPoly.of(1, 2).homogenize(2) == IntForm((1, 2, 0))

    def test_homogenize_rejects_fractions(self):
        """Test non-integral coefficients cannot become a form."""
        with pytest.raises(ValueError):
            RatPoly.of(Fraction(1, 2)).homogenize()


class TestIntForm:
    """Tests for integer binary forms."""

    def test_product(self):
        """Test (x + y)(x - y) = x^2 - y^2."""
        f = IntForm((1, 1)) * IntForm((1, -1))
        assert f == IntForm((1, 0, -1))
        assert str(f) == "x^2 - y^2"

    def test_evaluation(self):
        """Test a quartic at a point."""
        t = 2
        P = IntForm((1, 4 * t, -6 * t, -4 * t * t, t * t))
        assert P(1, 0) == 1
        assert P(0, 1) == t * t

    def test_monomial(self):
        """Test single-term forms report coefficient and exponents."""
        assert IntForm((0, 0, 5)).monomial() == (5, 0, 2)
        assert IntForm((1, 0, 1)).monomial() is None

    def test_degree_mismatch(self):
        """Test adding forms of different degree raises."""
        with pytest.raises(ValueError):
            IntForm((1, 1)) + IntForm((1, 0, 1))


# =============================================================================
# INTERVALS
# =============================================================================
class TestInterval:
    """Tests for dyadic interval enclosures."""

    def test_sqrt_two(self):
        """Test sqrt(2) squared encloses 2."""
        root = Interval.exact(2, 128).sqrt()
        assert (root * root).contains(2)
        assert root.width < Fraction(1, 2 ** 120)

    def test_exact_root(self):
        """Test exact fourth roots collapse."""
        assert Interval.exact(16, 64).root(4).contains(2)

    def test_three_valued_comparison(self):
        """Test overlapping intervals are undecided."""
        a = Interval.hull(1, 2)
        assert a.lt(Interval.hull(3, 4)) is True
        assert a.lt(Interval.hull(Fraction(3, 2), 3)) is None
        assert a.gt(Interval.hull(Fraction(3, 2), 3)) is None
        assert Interval.hull(3, 4).gt(a) is True

    def test_reciprocal_of_zero(self):
        """Test 1/[−1, 1] is undecided."""
        with pytest.raises(UndecidedError):
            Interval.hull(-1, 1).reciprocal()

    def test_negative_power(self):
        """Test 2^-1."""
        assert (Interval.exact(2) ** -1).contains(Fraction(1, 2))

    def test_even_power_straddling_zero(self):
        """Test [-1, 2]^2 = [0, 4]."""
        sq = Interval.hull(-1, 2) ** 2
        assert sq.lo == 0 and sq.hi == 4

    def test_pow_rat(self):
        """Test 4^(1/2) and 8^(-2/3)."""
        assert pow_rat(4, Fraction(1, 2)).contains(2)
        assert pow_rat(8, Fraction(-2, 3)).contains(Fraction(1, 4))

    def test_pi(self):
        """Test the pi enclosure against classical bounds."""
        pi = pi_interval(128)
        assert pi.lo > Fraction(333, 106)
        assert pi.hi < Fraction(355, 113)
        assert pi.width < Fraction(1, 2 ** 120)

    def test_decimal_str(self):
        """Test directed decimal rendering."""
        assert decimal_str(Fraction(1, 3), 5) == "0.33333"
        assert decimal_str(Fraction(1, 3), 5, upward=True) == "0.33334"

    def test_describe(self):
        """Test describe brackets the value."""
        d = Interval.exact(Fraction(1, 3), 64).describe(6)
        assert d["lo"] == "0.333333"
        assert d["hi"] == "0.333334"


class TestComplexInterval:
    """Tests for rectangular complex enclosures."""

    def test_i_squared(self):
        """Test i^2 = -1."""
        sq = ComplexInterval.exact(0, 1) ** 2
        assert sq.re.contains(-1)
        assert sq.im.contains(0)

    def test_sqrt_negative_real(self):
        """Test sqrt(-4) = 2i."""
        root = ComplexInterval.exact(-4, 0).sqrt()
        assert root.re.contains(0)
        assert root.im.contains(2)

    def test_fourth_root(self):
        """Test the principal fourth root of 16."""
        root = ComplexInterval.exact(16, 0).fourth_root()
        assert root.re.contains(2)


class TestRefine:
    """Tests for the precision ladder."""

    def test_escalates_until_decided(self):
        """Test compute is retried at doubled precision."""
        seen = []

        def compute(bits):
            seen.append(bits)
            if bits < 512:
                raise UndecidedError("ladder", bits)
            return bits

        assert refine(compute, start_bits=128, max_bits=4096) == 512
        assert seen == [128, 256, 512]

    def test_gives_up_at_cap(self):
        """Test the last UndecidedError propagates with its precision."""
        def compute(bits):
            raise UndecidedError("ladder", bits)

        with pytest.raises(UndecidedError) as excinfo:
            refine(compute, start_bits=128, max_bits=256)
        assert excinfo.value.bits == 256
