"""
Tests for QuarticPell CLI
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest
from typer.testing import CliRunner

import src.solver
from cli.__main__ import main
from cli.app import app
from cli.results import CommandResult, CommandStatus, jsonable, worst
from src.errors import ConjectureViolation, VerificationError
from src.solver import SolutionRecord


def _lines(result) -> list[dict]:
    """CommandResult objects printed on stdout."""
    return [json.loads(line) for line in result.stdout.splitlines() if line.startswith("{")]


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner):
    """Invoke the app quietly and in-process."""
    def _invoke(*args):
        return runner.invoke(app, ["--log-level", "ERROR", "-j", "1", *args])
    return _invoke


class TestResults:
    """Tests for the CommandResult schema."""

    def test_jsonable(self):
        """Test integers become strings and booleans survive."""
        assert jsonable({"n": 10 ** 30, "ok": True, "rows": [1, None]}) == {
            "n": str(10 ** 30), "ok": True, "rows": ["1", None],
        }

    def test_worst(self):
        """Test the highest exit code wins."""
        assert worst([]) is CommandStatus.OK
        assert worst([CommandStatus.OK, CommandStatus.CONJECTURE_VIOLATION,
                      CommandStatus.UNDECIDED]) is CommandStatus.CONJECTURE_VIOLATION

    def test_line_is_sorted_json(self):
        """Test the serialized line round-trips with sorted keys."""
        line = CommandResult(command="solve", input={"a": "2"}).to_line()
        data = json.loads(line)
        assert list(data) == sorted(data)
        assert data["status"] == "ok"


class TestSolveCommand:
    """Tests for solve."""

    def test_three_two(self, invoke):
        """Test `solve 3 2` finds (1, 1) and (3, 11)."""
        result = invoke("solve", "3", "2", "--x-max", "200", "--k-max", "10")
        assert result.exit_code == 0
        [line] = _lines(result)
        assert line["status"] == "ok"
        assert [s["X"] for s in line["result"]["solutions"]] == ["1", "3"]
        assert line["input"]["a"] == "3"

    def test_a_is_square(self, invoke):
        """Test `solve 4 3` reports the a_is_square route."""
        result = invoke("solve", "4", "3", "--x-max", "200")
        assert result.exit_code == 0
        [line] = _lines(result)
        assert line["result"]["reduction"]["status"] == "a_is_square"

    def test_verification_failure(self, invoke, monkeypatch):
        """Test a failed check exits 2 with a verification_failed line."""
        def fail(a, b, limits):
            raise VerificationError("forced_check", "forced")
        monkeypatch.setattr(src.solver, "solve", fail)
        result = invoke("solve", "2", "1")
        assert result.exit_code == 2
        assert _lines(result)[-1]["status"] == "verification_failed"

    def test_conjecture_violation(self, invoke, monkeypatch):
        """Test a third solution exits 3."""
        def violate(a, b, limits):
            raise ConjectureViolation(a, b, [SolutionRecord(x, x, "brute_force") for x in (1, 2, 3)])
        monkeypatch.setattr(src.solver, "solve", violate)
        result = invoke("solve", "2", "1")
        assert result.exit_code == 3
        line = _lines(result)[-1]
        assert line["status"] == "conjecture_violation"
        assert len(line["result"]["solutions"]) == 3

    def test_bad_argument(self, invoke):
        """Test a = 0 is a usage error."""
        assert invoke("solve", "0", "2").exit_code != 0


class TestFamilyCommand:
    """Tests for family."""

    def test_single_t(self, invoke):
        """Test `family --t 6` finds X = 5."""
        result = invoke("family", "--t", "6", "--x-max", "100", "--k-max", "8")
        assert result.exit_code == 0
        [line] = _lines(result)
        assert [s["X"] for s in line["result"]["solutions"]] == ["1", "5"]

    def test_range_streams_lines(self, invoke):
        """Test one line per t."""
        result = invoke("family", "--t-from", "1", "--t-to", "5", "--x-max", "100", "--k-max", "8")
        assert result.exit_code == 0
        assert [line["result"]["t"] for line in _lines(result)] == ["1", "2", "3", "4", "5"]

    def test_missing_range(self, invoke):
        """Test neither --t nor a range is a usage error."""
        assert invoke("family").exit_code == 1


class TestVerificationCommands:
    """Tests for the verification commands."""

    def test_gap(self, invoke):
        """Test the chain replay at t = 205."""
        result = invoke("gap", "--t", "205", "--r-max", "3")
        assert result.exit_code == 0
        [line] = _lines(result)
        assert line["result"]["chain"]["ok"] is True
        assert line["result"]["exclusion"] is True

    def test_gap_below_threshold(self, invoke):
        """Test t <= 204 is rejected."""
        assert invoke("gap", "--t", "100").exit_code == 1

    def test_pade_det(self, invoke):
        """Test the determinant checks alone."""
        result = invoke("pade", "--det", "--r-max", "3")
        assert result.exit_code == 0
        [line] = _lines(result)
        assert len(line["result"]["determinant"]) == 6
        assert "order" not in line["result"]

    def test_pade_order(self, invoke):
        """Test the vanishing order for r = 1."""
        result = invoke("pade", "--verify-order", "--r-max", "1")
        [line] = _lines(result)
        assert line["result"]["order"][0]["leading"] == "5/128"

    def test_roots(self, invoke):
        """Test four certified brackets at t = 205."""
        result = invoke("roots", "--t", "205")
        assert result.exit_code == 0
        assert len(_lines(result)[0]["result"]["brackets"]) == 4

    def test_sequences(self, invoke):
        """Test the t = 1 table."""
        result = invoke("sequences", "--t", "1", "--k-max", "3")
        assert result.exit_code == 0
        rows = _lines(result)[0]["result"]["rows"]
        assert [row["V"] for row in rows] == ["1", "5", "29", "169"]

    def test_scan_below_threshold(self, invoke):
        """Test the V_7(1) square is reported without failing."""
        result = invoke("scan-v7v11", "--t-from", "1", "--t-to", "10")
        assert result.exit_code == 0
        hits = _lines(result)[0]["result"]["hits"]
        assert {"t": "1", "index": "7"} in hits

    def test_scan_above_threshold(self, invoke):
        """Test no hits just above 204."""
        result = invoke("scan-v7v11", "--t-from", "205", "--t-to", "1000")
        assert result.exit_code == 0
        assert _lines(result)[0]["result"]["count"] == "0"

    def test_witness(self, invoke):
        """Test the t = 1 witness."""
        result = invoke("witness", "--t", "1", "--n-max", "3")
        witnesses = _lines(result)[0]["result"]["witnesses"]
        assert witnesses[0]["x"] == "-2" and witnesses[0]["y"] == "3"

    def test_integrality_sigma(self, invoke):
        """Test a single instance with the Sigma cross-check."""
        result = invoke("integrality", "--t", "1", "--x1", "-2", "--y1", "3",
                        "--x2", "1", "--y2", "1", "--sigma")
        assert result.exit_code == 0
        assert _lines(result)[0]["result"]["consistent"] is True

    def test_integrality_random(self, invoke):
        """Test seeded random instances stream one line each."""
        result = invoke("integrality", "--random", "5", "--seed", "3", "--t-max", "20")
        assert result.exit_code == 0
        assert len(_lines(result)) == 5

    def test_bounds(self, invoke):
        """Test a small bounds run."""
        result = invoke("bounds", "--r-max", "1", "--sweep", "50")
        assert result.exit_code == 0
        assert _lines(result)[0]["result"]["stirling_failures"] == []


class TestGlobalOptions:
    """Tests for the global options."""

    def test_out_file(self, invoke, tmp_path):
        """Test --out appends the JSON line."""
        out = tmp_path / "runs.jsonl"
        invoke("--out", str(out), "sequences", "--t", "2", "--k-max", "2")
        invoke("--out", str(out), "sequences", "--t", "3", "--k-max", "2")
        lines = out.read_text().splitlines()
        assert [json.loads(line)["input"]["t"] for line in lines] == ["2", "3"]

    def test_pretty(self, invoke):
        """Test --pretty renders a table instead of JSON."""
        result = invoke("--pretty", "sequences", "--t", "1", "--k-max", "1")
        assert result.exit_code == 0
        assert _lines(result) == []
        assert "sequences" in result.stdout

    def test_version(self, runner):
        """Test --version exits cleanly."""
        assert runner.invoke(app, ["--version"]).exit_code == 0


class TestEntryPoint:
    """Tests for the console script entry point."""

    def test_usage_error_exits_1(self, monkeypatch, capsys):
        """Test a missing argument exits with code 1 and a usage message."""
        monkeypatch.setattr(sys, "argv", ["quarticpell", "--log-level", "ERROR", "solve", "2"])
        with pytest.raises(SystemExit) as excinfo:
            main()
        assert excinfo.value.code == 1
        assert "Missing argument" in capsys.readouterr().err

    def test_success_exits_0(self, monkeypatch, capsys):
        """Test a successful command exits with code 0."""
        monkeypatch.setattr(
            sys, "argv",
            ["quarticpell", "--log-level", "ERROR", "sequences", "--t", "1", "--k-max", "1"],
        )
        with pytest.raises(SystemExit) as excinfo:
            main()
        assert excinfo.value.code == 0
        assert capsys.readouterr().out.startswith("{")
