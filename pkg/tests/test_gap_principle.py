"""
Tests for QuarticPell Gap Principle
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

from src.errors import PreconditionError
from src.exact_arith import pi_interval
from src.gap_principle import (
    THRESHOLD_T,
    chain_grid,
    chain_replay,
    exclusion_check,
    gap_constants,
    gap_lower_bound,
    gap_pair_check,
    idol_check,
    height_inequality,
    lambda_floor,
    stirling_check,
    stirling_sweep,
    x_r,
    xr_bound_check,
    xr_sweep,
)


class TestConstants:
    """Tests for c1, c2 and the Lambda floor."""

    def test_c1_at_t1(self):
        """Test c1(1, 0) = 8 / sqrt(pi) at t = 1."""
        consts = gap_constants(1, 0, 1)
        assert consts.c1.lo < Fraction(45136, 10000)
        assert consts.c1.hi > Fraction(45135, 10000)

    def test_constants_positive(self):
        """Test both constants are positive for g = 0 and 1."""
        for g in (0, 1):
            consts = gap_constants(3, g, 205)
            assert consts.c1.is_positive()
            assert consts.c2.is_positive()

    def test_domain(self):
        """Test g must be 0 or 1."""
        with pytest.raises(PreconditionError):
            gap_constants(1, 2, 5)

    def test_lambda_floor(self):
        """Test the floor for g = 0 and g = 1 at t = 16."""
        assert lambda_floor(1, 0, 16).contains(4)
        assert (lambda_floor(1, 1, 16) ** 4).contains(2)


class TestStirling:
    """Tests for the central binomial estimates."""

    @pytest.mark.parametrize("k", [1, 2, 3, 10, 50, 200])
    def test_single_k(self, k):
        """Test the bounds at single k, including equality at k = 1."""
        assert stirling_check(k)

    def test_sweep_short(self):
        """Test no k up to 200 fails."""
        assert stirling_sweep(200) == []

    @pytest.mark.slow
    def test_sweep(self):
        """Test no k up to 10^4 fails."""
        assert stirling_sweep(10 ** 4) == []

    def test_domain(self):
        """Test k must be positive."""
        with pytest.raises(PreconditionError):
            stirling_check(0)


class TestXr:
    """Tests for X_r."""

    def test_x1(self):
        """Test X_1 = 3/16."""
        assert x_r(1) == Fraction(3, 16)

    def test_recurrence(self):
        """Test X_2 = X_1 * 5 * 7 / 64."""
        assert x_r(2) == Fraction(3, 16) * Fraction(35, 64)

    @pytest.mark.parametrize("r", [1, 2, 5, 20])
    def test_bound(self, r):
        """Test X_r < 1/(sqrt(2) pi r)."""
        assert xr_bound_check(r)

    def test_sweep_short(self):
        """Test no r up to 200 fails."""
        assert xr_sweep(200) == []

    @pytest.mark.slow
    def test_sweep(self):
        """Test no r up to 10^4 fails."""
        assert xr_sweep(10 ** 4) == []


class TestGap:
    """Tests for the gap inequality."""

    def test_lower_bound_value(self):
        """Test (3/pi) |xi1|^3 for |xi1| = 2, t = 1."""
        bound = gap_lower_bound(1, 2 ** 8)
        assert (bound * pi_interval(128)).contains(24)

    def test_pair_far_apart(self):
        """Test a much larger second point satisfies the gap."""
        assert gap_pair_check(1, (1, 0), (1000, 0))

    def test_pair_reversed(self):
        """Test the gap fails when the second point is smaller."""
        assert not gap_pair_check(1, (1000, 0), (1, 0))

    def test_nonpositive_carrier(self):
        """Test the carrier must be positive."""
        with pytest.raises(PreconditionError):
            gap_lower_bound(1, 0)


class TestTwoTermBound:
    """Tests for the two-term lower bound."""

    def test_certified(self):
        """Test small carriers exceed one."""
        lhs, verdict = height_inequality(1, 0, 1, 1, 1)
        assert verdict == "certified"
        assert lhs.gt(1) is True

    def test_refuted(self):
        """Test widely separated carriers fall below one."""
        xi1 = 2 ** 32 * 205 ** 15
        _, verdict = height_inequality(1, 0, 205, xi1, xi1 ** 4)
        assert verdict == "refuted"


class TestChainReplay:
    """Tests for the induction replay."""

    @pytest.fixture
    def report(self):
        return chain_replay(THRESHOLD_T + 1, 10)

    def test_all_steps_certified(self, report):
        """Test every step holds with margin at t = 205."""
        assert report.ok
        assert report.failures() == []

    def test_exponents(self, report):
        """Test the exponents 4r + 3 and the final t power."""
        assert report.goat_exponents == [4 * r + 3 for r in range(1, 11)]
        assert report.final_exponent == Fraction(70, 2) + Fraction(31, 8)

    def test_vanishing_branch_present(self, report):
        """Test branch B appears from r = 5 on."""
        assert {c.r for c in report.checks if c.branch == "B"} == set(range(5, 10))

    def test_to_dict(self, report):
        """Test the report serializes its checks."""
        data = report.to_dict()
        assert data["ok"] is True
        assert len(data["checks"]) == len(report.checks)

    def test_threshold(self):
        """Test t <= 204 is outside the induction."""
        with pytest.raises(PreconditionError):
            chain_replay(THRESHOLD_T, 3)

    @pytest.mark.parametrize("t", [206, 10 ** 4, 10 ** 9])
    def test_larger_t(self, t):
        """Test the replay at larger t."""
        assert chain_replay(t, 6).ok

    def test_grid(self):
        """Test the grid returns one report per t in order."""
        reports = chain_grid([205, 300], 3)
        assert [r.t for r in reports] == [205, 300]
        assert all(r.ok for r in reports)

    @pytest.mark.slow
    @pytest.mark.parametrize("t", [500, 10 ** 3, 10 ** 6])
    def test_full_depth(self, t):
        """Test every step certifies at r_max = 10."""
        report = chain_replay(t, 10)
        assert report.ok
        assert report.failures() == []


class TestClosingInequalities:
    """Tests for the final contradictions."""

    @pytest.mark.parametrize("r", range(1, 6))
    @pytest.mark.parametrize("t", [1, 205, 10 ** 6])
    def test_idol_refuted(self, r, t):
        """Test the height inequality fails for every table r."""
        assert idol_check(r, t).refuted

    def test_idol_r1_constants(self):
        """Test r = 1 compares 2^23 t^9 with 6635.52 t^6."""
        check = idol_check(1, 1)
        assert check.lhs == 2 ** 23
        assert check.rhs == Fraction(663552, 100)

    def test_idol_domain(self):
        """Test r outside the tables is rejected."""
        with pytest.raises(PreconditionError):
            idol_check(6, 205)

    @pytest.mark.parametrize("t", [205, 10 ** 3, 10 ** 8])
    def test_exclusion(self, t):
        """Test the exclusion inequality above the threshold."""
        assert exclusion_check(t)

    def test_exclusion_threshold(self):
        """Test t <= 204 is rejected."""
        with pytest.raises(PreconditionError):
            exclusion_check(204)
