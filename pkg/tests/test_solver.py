"""
Tests for QuarticPell Solver
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

import src.solver as solver
from src.config import LimitsSettings
from src.errors import ConjectureViolation, PreconditionError, VerificationError
from src.solver import (
    ReductionStatus,
    SolutionRecord,
    brute_force,
    family_scan,
    family_solve,
    reduce,
    solve,
    thue_witness,
    witness_search,
)


@pytest.fixture
def limits():
    """Small search limits for fast tests."""
    return LimitsSettings(k_max=12, x_max=2000, witness_n_max=3)


class TestBruteForce:
    """Tests for brute_force."""

    def test_two_one(self):
        """Test 2X^4 - Y^2 = 1 has X = 1 and X = 13 below 200."""
        found = brute_force(2, 1, 200)
        assert [(r.X, r.Y) for r in found] == [(1, 1), (13, 239)]
        assert all(r.verified and r.source == "brute_force" for r in found)

    def test_residue_classes(self):
        """Test the residue filter keeps (3, 11) for 3X^4 - 2Y^2 = 1."""
        assert [(r.X, r.Y) for r in brute_force(3, 2, 100)] == [(1, 1), (3, 11)]

    def test_nonpositive(self):
        """Test a, b, x_max must be positive."""
        with pytest.raises(PreconditionError):
            brute_force(0, 1, 10)


class TestReduce:
    """Tests for the reduction to the family."""

    def test_family(self):
        """Test (2, 1) lands on t = 1."""
        outcome = reduce(2, 1)
        assert outcome.status is ReductionStatus.FAMILY
        assert (outcome.t, outcome.x, outcome.v1, outcome.w1) == (1, 1, 1, 1)

    def test_a_is_square(self):
        """Test a square a is routed to brute force."""
        outcome = reduce(4, 3)
        assert outcome.status is ReductionStatus.A_IS_SQUARE
        assert outcome.note

    def test_pell_insolvable(self):
        """Test 3v^2 - w^2 = 1 has no fundamental solution."""
        assert reduce(3, 1).status is ReductionStatus.PELL_INSOLVABLE

    def test_v1_not_square(self):
        """Test 2v^2 - 7w^2 = 1 has v1 = 2."""
        outcome = reduce(2, 7)
        assert outcome.status is ReductionStatus.V1_NOT_SQUARE
        assert outcome.v1 == 2

    def test_degenerate(self):
        """Test ab square is reported, not raised."""
        assert reduce(2, 8).status is ReductionStatus.PELL_DEGENERATE

    def test_to_dict(self):
        """Test numbers are serialized as strings."""
        data = reduce(2, 1).to_dict()
        assert data == {"a": "2", "b": "1", "status": "family", "t": "1", "x": "1", "v1": "1", "w1": "1"}


class TestFamilySolve:
    """Tests for (t+1)X^4 - tY^2 = 1."""

    def test_t1(self):
        """Test t = 1 has X = 1 and X = 13, both cross-checked."""
        records = family_solve(1, k_max=12, x_max=2000)
        assert [(r.X, r.Y) for r in records] == [(1, 1), (13, 239)]
        assert [r.k for r in records] == [0, 3]
        assert all(r.cross_checked for r in records)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_m_squared_plus_m(self, m):
        """Test t = m^2 + m has the V_3 solution X = 2m + 1."""
        t = m * m + m
        records = family_solve(t, k_max=12, x_max=500)
        assert [r.X for r in records] == [1, 2 * m + 1]
        assert records[1].k == 1

    def test_single_solution(self):
        """Test t = 3 only has the trivial solution."""
        assert [(r.X, r.Y) for r in family_solve(3, k_max=12, x_max=500)] == [(1, 1)]

    def test_sequence_beyond_brute_force(self):
        """Test a sequence solution above x_max is kept but not cross-checked."""
        records = family_solve(1, k_max=12, x_max=5)
        assert records[-1].X == 13
        assert not records[-1].cross_checked

    def test_nonpositive_t(self):
        """Test t must be positive."""
        with pytest.raises(PreconditionError):
            family_solve(0)

    @pytest.mark.slow
    @pytest.mark.parametrize("m", range(1, 31))
    def test_m_squared_plus_m_full_limits(self, m):
        """Test exactly (1, 1) and (2m + 1, 4m^2 + 4m + 3), cross-checked to X = 10^6."""
        records = family_solve(m * m + m, k_max=40, x_max=10 ** 6)
        assert [(r.X, r.Y) for r in records] == [(1, 1), (2 * m + 1, 4 * m * m + 4 * m + 3)]
        assert all(r.cross_checked for r in records)


class TestFamilyScan:
    """Tests for family_scan."""

    def test_rows_in_order(self):
        """Test one ok row per t, two solutions exactly at t = 1 and t = m^2 + m."""
        rows = family_scan(1, 30, k_max=10, x_max=300)
        assert [row.t for row in rows] == list(range(1, 31))
        assert all(row.status == "ok" for row in rows)
        doubles = [row.t for row in rows if len(row.solutions) == 2]
        assert doubles == [1, 2, 6, 12, 20, 30]

    def test_bad_range(self):
        """Test an inverted range is rejected."""
        with pytest.raises(PreconditionError):
            family_scan(5, 4)

    @pytest.mark.slow
    def test_sweep_to_2000(self):
        """Test at most two solutions, and two exactly when t = 1 or t = m^2 + m."""
        rows = family_scan(1, 2000, k_max=40, x_max=10 ** 4)
        pronic = {1} | {m * m + m for m in range(1, 45)}
        assert all(row.status == "ok" for row in rows)
        assert all(len(row.solutions) <= 2 for row in rows)
        doubles = {row.t for row in rows if len(row.solutions) == 2}
        assert doubles == {t for t in pronic if t <= 2000}
        assert all(len(row.solutions) == 1 for row in rows if row.t not in doubles)


class TestSolve:
    """Tests for solve."""

    def test_family_route(self, limits):
        """Test (2, 1) returns both solutions, cross-checked."""
        records, outcome = solve(2, 1, limits)
        assert outcome.status is ReductionStatus.FAMILY
        assert [(r.X, r.Y) for r in records] == [(1, 1), (13, 239)]
        assert all(r.verified and r.cross_checked for r in records)

    def test_three_two(self, limits):
        """Test (3, 2) through t = 2."""
        records, _ = solve(3, 2, limits)
        assert [(r.X, r.Y) for r in records] == [(1, 1), (3, 11)]

    def test_a_is_square(self, limits):
        """Test (4, 3) is served by brute force alone."""
        records, outcome = solve(4, 3, limits)
        assert outcome.status is ReductionStatus.A_IS_SQUARE
        assert [(r.X, r.Y) for r in records] == [(1, 1)]

    @pytest.mark.parametrize("a, b", [(3, 1), (2, 7), (2, 8)])
    def test_no_solutions(self, limits, a, b):
        """Test excluded routes find nothing."""
        records, _ = solve(a, b, limits)
        assert records == []

    def test_exclusion_contradicted(self, limits, monkeypatch):
        """Test a brute-force hit under pell_insolvable is a verification failure."""
        monkeypatch.setattr(
            solver, "brute_force", lambda a, b, x_max: [SolutionRecord(1, 1, "brute_force")]
        )
        with pytest.raises(VerificationError):
            solve(3, 1, limits)

    def test_third_solution(self, limits, monkeypatch):
        """Test three solutions raise ConjectureViolation."""
        fake = [SolutionRecord(x, x, "brute_force", verified=True) for x in (1, 2, 3)]
        monkeypatch.setattr(solver, "brute_force", lambda a, b, x_max: fake)
        with pytest.raises(ConjectureViolation) as excinfo:
            solve(4, 3, limits)
        assert len(excinfo.value.solutions) == 3

    @pytest.mark.slow
    @pytest.mark.parametrize("a", range(1, 31))
    def test_agrees_with_brute_force(self, a):
        """Test every returned solution is verified and brute force finds the same X for b <= 30."""
        limits = LimitsSettings(k_max=40, x_max=10 ** 4, witness_n_max=3)
        for b in range(1, 31):
            records, _ = solve(a, b, limits)
            assert all(r.verified for r in records)
            within = {r.X for r in records if r.X <= limits.x_max}
            assert within == {r.X for r in brute_force(a, b, limits.x_max)}, (a, b)
            assert len(records) <= 2


class TestThueWitness:
    """Tests for the constructive witness."""

    def test_t1_n1(self):
        """Test V_7 = 13^2 at t = 1 gives (x, y) = (-2, 3)."""
        witness = thue_witness(1, 1)
        assert (witness.z, witness.t1, witness.t2) == (13, 1, 1)
        assert (witness.G, witness.H) == (2, 3)
        assert (witness.x, witness.y) == (-2, 3)

    def test_not_square(self):
        """Test V_7 = 881 at t = 2 gives nothing."""
        assert thue_witness(2, 1) is None

    def test_n0_skipped(self):
        """Test V_3 = 25 at t = 6 is not turned into a witness."""
        assert thue_witness(6, 0) is None

    def test_search(self):
        """Test the search finds only the n = 1 witness at t = 1."""
        found = witness_search(1, 3)
        assert [w.n for w in found] == [1]
        assert found[0].to_dict()["x"] == "-2"

    def test_negative_n(self):
        """Test n must be nonnegative."""
        with pytest.raises(PreconditionError):
            thue_witness(1, -1)
