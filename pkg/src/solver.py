"""
QuarticPell Solver

Enumerates and verifies the positive solutions of a X^4 - b Y^2 = 1.

Two independent routes are always run and compared:

- brute force over X <= x_max, restricted to residue classes of X mod b
- reduction to the family (t+1) X^4 - t Y^2 = 1 through the fundamental
  solution of a v^2 - b w^2 = 1, then square detection in V_{2k+1}

and the constructive map from a square V_{4n+3} to a small value of the
quartic form P (the Thue witness).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import List, Optional, Sequence

from src.config import LimitsSettings, get_config
from src.errors import (
    ConjectureViolation,
    DegeneratePellError,
    PreconditionError,
    VerificationError,
)
from src.exact_arith import is_perfect_square
from src.observability import get_logger
from src.pell_sequences import PellContext, even_powers, odd_power, odd_powers, pell_fundamental
from src.quartic_forms import QuarticForm
from src.scan import run_chunks

logger = get_logger("solver")

MAX_SOLUTIONS = 2
THRESHOLD_T = 204


# =============================================================================
# TYPES
# =============================================================================
@dataclass(frozen=True)
class SolutionRecord:
    """
    One positive solution (X, Y).

    source is "brute_force" or "sequence"; sequence records carry the index k
    of the square V_{2k+1}. cross_checked is set when both routes found it.
    """
    X: int
    Y: int
    source: str
    k: Optional[int] = None
    verified: bool = False
    cross_checked: bool = False

    def to_dict(self) -> dict:
        return {
            "X": str(self.X),
            "Y": str(self.Y),
            "source": self.source,
            "k": self.k,
            "verified": self.verified,
            "cross_checked": self.cross_checked,
        }


class ReductionStatus(str, Enum):
    FAMILY = "family"
    A_IS_SQUARE = "a_is_square"
    PELL_INSOLVABLE = "pell_insolvable"
    V1_NOT_SQUARE = "v1_not_square"
    PELL_DEGENERATE = "pell_degenerate"


@dataclass(frozen=True)
class ReductionOutcome:
    """Where (a, b) lands; t, x and the fundamental (v1, w1) when applicable."""
    a: int
    b: int
    status: ReductionStatus
    t: Optional[int] = None
    x: Optional[int] = None
    v1: Optional[int] = None
    w1: Optional[int] = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"a": str(self.a), "b": str(self.b), "status": self.status.value}
        for name in ("t", "x", "v1", "w1"):
            value = getattr(self, name)
            if value is not None:
                out[name] = str(value)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class ThueWitness:
    """
    (x, y) = (-t1 G, H) with P(x, y) = t1^2, built from z^2 = V_{4n+3}:

        z - (T_n + t U_n) = 2 t1 G^2,  z + (T_n + t U_n) = 2 t2 H^2,  U_{n+1} = 2GH
    """
    t: int
    n: int
    z: int
    t1: int
    t2: int
    G: int
    H: int
    x: int
    y: int

    def to_dict(self) -> dict:
        return {name: str(getattr(self, name)) for name in ("t", "n", "z", "t1", "t2", "G", "H", "x", "y")}


def _holds(a: int, b: int, X: int, Y: int) -> bool:
    return a * X ** 4 - b * Y * Y == 1


def _verified(a: int, b: int, record: SolutionRecord) -> SolutionRecord:
    if not _holds(a, b, record.X, record.Y):
        raise VerificationError(
            "solution",
            f"({record.X}, {record.Y}) does not satisfy {a}X^4 - {b}Y^2 = 1",
        )
    return SolutionRecord(record.X, record.Y, record.source, record.k, True, record.cross_checked)


def _check_count(a: int, b: int, records: List[SolutionRecord]) -> None:
    if len(records) > MAX_SOLUTIONS:
        logger.critical("conjecture_violation", a=a, b=b, solutions=[(r.X, r.Y) for r in records])
        raise ConjectureViolation(a, b, records)


# =============================================================================
# BRUTE FORCE
# =============================================================================
def _candidates(a: int, b: int, x_max: int):
    if b > x_max:
        yield from range(1, x_max + 1)
        return
    residues = [r for r in range(b) if (a * pow(r, 4, b)) % b == 1 % b]
    for base in range(0, x_max + 1, b):
        for r in residues:
            X = base + r
            if 1 <= X <= x_max:
                yield X


def brute_force(a: int, b: int, x_max: int) -> List[SolutionRecord]:
    """Every solution with X <= x_max, by exact square tests."""
    if a < 1 or b < 1 or x_max < 1:
        raise PreconditionError("a, b and x_max must be positive")
    found = []
    for X in _candidates(a, b, x_max):
        q, rem = divmod(a * X ** 4 - 1, b)
        if rem or q <= 0:
            continue
        Y = is_perfect_square(q)
        if Y:
            found.append(_verified(a, b, SolutionRecord(X, Y, "brute_force")))
    return found


# =============================================================================
# REDUCTION
# =============================================================================
def reduce(a: int, b: int) -> ReductionOutcome:
    """
    Route (a, b) to the family (t+1) X^4 - t Y^2 = 1.

    With (v1, w1) the fundamental solution of a v^2 - b w^2 = 1, a solution
    can exist only when v1 = x^2, and then t = a x^4 - 1 = b w1^2.
    """
    if a < 1 or b < 1:
        raise PreconditionError("a and b must be positive")
    if is_perfect_square(a) is not None:
        return ReductionOutcome(
            a, b, ReductionStatus.A_IS_SQUARE,
            note="a is a square: at most one solution, served by brute force",
        )
    try:
        fundamental = pell_fundamental(a, b)
    except DegeneratePellError:
        return ReductionOutcome(
            a, b, ReductionStatus.PELL_DEGENERATE,
            note="ab is a square: finitely many candidates, served by brute force",
        )
    if fundamental is None:
        return ReductionOutcome(a, b, ReductionStatus.PELL_INSOLVABLE)
    v1, w1 = fundamental.v, fundamental.w
    x = is_perfect_square(v1)
    if x is None:
        return ReductionOutcome(a, b, ReductionStatus.V1_NOT_SQUARE, v1=v1, w1=w1)
    t = a * x ** 4 - 1
    if t != b * w1 * w1:
        raise VerificationError("reduction_t", expected=b * w1 * w1, computed=t)
    return ReductionOutcome(a, b, ReductionStatus.FAMILY, t=t, x=x, v1=v1, w1=w1)


# =============================================================================
# FAMILY
# =============================================================================
def _sequence_records(t: int, k_max: int) -> List[SolutionRecord]:
    ctx = PellContext(t)
    records = []
    for odd in odd_powers(ctx, k_max):
        root = is_perfect_square(odd.V)
        if root is not None:
            records.append(SolutionRecord(root, odd.W, "sequence", k=odd.k))
    return records


def _check_square_pattern(t: int, records: List[SolutionRecord]) -> None:
    squares = [r.k for r in records if r.k is not None and r.k >= 1]
    if 1 in squares:
        m = (next(r.X for r in records if r.k == 1) - 1) // 2
        if m * (m + 1) != t:
            raise VerificationError("v3_square", f"V_3 square but t = {t} is not m^2 + m")
        later = [k for k in squares if k >= 2]
        if later:
            raise VerificationError("v3_exclusive", f"V_3 and V_{2 * later[0] + 1} both square at t = {t}")
    for k in squares:
        if k < 2:
            continue
        if t > THRESHOLD_T and k in (3, 5):
            raise VerificationError("v7_v11_square", f"V_{2 * k + 1} is a square at t = {t} > {THRESHOLD_T}")
        logger.warning("late_square", t=t, index=2 * k + 1)


def family_solve(
    t: int,
    k_max: Optional[int] = None,
    x_max: Optional[int] = None,
) -> List[SolutionRecord]:
    """
    Solutions of (t+1) X^4 - t Y^2 = 1 from the squares among V_1..V_{2k_max+1}
    merged with brute force up to x_max.

    Raises ConjectureViolation on a third solution.
    """
    if t < 1:
        raise PreconditionError(f"t must be >= 1, got {t}")
    limits = get_config().settings.limits
    k_max = limits.k_max if k_max is None else k_max
    x_max = limits.x_max if x_max is None else x_max
    started = time.perf_counter()

    sequence = [_verified(t + 1, t, r) for r in _sequence_records(t, k_max)]
    _check_square_pattern(t, sequence)
    brute = brute_force(t + 1, t, x_max)

    merged = {r.X: r for r in sequence}
    for record in brute:
        if record.X in merged:
            seq = merged[record.X]
            merged[record.X] = SolutionRecord(seq.X, seq.Y, seq.source, seq.k, True, True)
        else:
            merged[record.X] = record
    for X, record in merged.items():
        if record.source == "sequence" and X <= x_max and not record.cross_checked:
            raise VerificationError("family_cross_check", f"brute force missed X = {X} at t = {t}")
    records = sorted(merged.values(), key=lambda r: r.X)
    _check_count(t + 1, t, records)

    logger.debug(
        "family_solved",
        t=t,
        solutions=len(records),
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    return records


@dataclass
class FamilyRow:
    """One t of a family range scan."""
    t: int
    solutions: List[SolutionRecord] = field(default_factory=list)
    status: str = "ok"
    message: str = ""


def family_scan_chunk(items: Sequence[tuple[int, int, int]]) -> List[FamilyRow]:
    rows = []
    for t, k_max, x_max in items:
        try:
            rows.append(FamilyRow(t, family_solve(t, k_max, x_max)))
        except ConjectureViolation as exc:
            rows.append(FamilyRow(t, exc.solutions, "conjecture_violation", str(exc)))
        except VerificationError as exc:
            rows.append(FamilyRow(t, [], "verification_failed", str(exc)))
    return rows


def family_scan(
    t_lo: int,
    t_hi: int,
    k_max: Optional[int] = None,
    x_max: Optional[int] = None,
    jobs: int = 1,
    chunk_size: int = 50,
) -> List[FamilyRow]:
    """family_solve for t_lo..t_hi, one row per t in order."""
    if t_lo < 1 or t_hi < t_lo:
        raise PreconditionError("need 1 <= t_lo <= t_hi")
    limits = get_config().settings.limits
    k_max = limits.k_max if k_max is None else k_max
    x_max = limits.x_max if x_max is None else x_max
    items = [(t, k_max, x_max) for t in range(t_lo, t_hi + 1)]
    return run_chunks(family_scan_chunk, items, jobs, chunk_size, label="family")


# =============================================================================
# SOLVE
# =============================================================================
def solve(
    a: int,
    b: int,
    limits: Optional[LimitsSettings] = None,
) -> tuple[List[SolutionRecord], ReductionOutcome]:
    """
    All solutions of a X^4 - b Y^2 = 1 found within the limits, each verified
    exactly, together with the reduction outcome.

    Usage:
        records, outcome = solve(2, 1)
        [(r.X, r.Y) for r in records]   # [(1, 1), (13, 239)]
    """
    limits = limits or get_config().settings.limits
    started = time.perf_counter()
    outcome = reduce(a, b)
    brute = brute_force(a, b, limits.x_max)

    if outcome.status is not ReductionStatus.FAMILY:
        if brute and outcome.status in (ReductionStatus.PELL_INSOLVABLE, ReductionStatus.V1_NOT_SQUARE):
            raise VerificationError(
                "reduction_exclusion",
                f"{outcome.status.value} but brute force found {len(brute)} solution(s)",
            )
        _check_count(a, b, brute)
        return brute, outcome

    assert outcome.t is not None and outcome.x is not None and outcome.w1 is not None
    family = family_solve(outcome.t, limits.k_max, limits.x_max)
    mapped = {}
    for record in family:
        X, Y = outcome.x * record.X, outcome.w1 * record.Y
        mapped[X] = _verified(a, b, SolutionRecord(X, Y, record.source, record.k))

    for record in brute:
        if record.X not in mapped:
            raise VerificationError("solve_cross_check", f"reduction missed X = {record.X}")
        seq = mapped[record.X]
        mapped[record.X] = SolutionRecord(seq.X, seq.Y, seq.source, seq.k, True, True)
    records = sorted(mapped.values(), key=lambda r: r.X)
    _check_count(a, b, records)

    logger.info(
        "solve_completed",
        a=a,
        b=b,
        status=outcome.status.value,
        solutions=len(records),
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    return records, outcome


# =============================================================================
# THUE WITNESS
# =============================================================================
def _divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _check_witness(w: ThueWitness, u_next: int) -> None:
    P = QuarticForm(w.t)
    checks = {
        "split": w.t1 * w.t2 == w.t,
        "cross": 2 * w.G * w.H == u_next,
        "form_value": P(w.x, w.y) == w.t1 * w.t1,
        "coprime": gcd(w.x, w.y) == 1,
        "t1_small": w.t1 * w.t1 <= w.t,
        "height": w.n < 3 or abs(w.x * w.y) > 64 * w.t ** 3,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise VerificationError("thue_witness", f"invariants failed at t={w.t}, n={w.n}: {failed}")


def thue_witness(t: int, n: int) -> Optional[ThueWitness]:
    """
    The point (x, y) with P(x, y) = t1^2 attached to a square V_{4n+3}, or
    None when V_{4n+3} is not a square (or n = 0, where V_3 square is the
    m^2 + m family itself).
    """
    if n < 0:
        raise PreconditionError("n must be >= 0")
    ctx = PellContext(t)
    z = is_perfect_square(odd_power(ctx, 2 * n + 1).V)
    if z is None:
        return None
    if n == 0:
        logger.info("witness_skipped", t=t, reason="V_3 square")
        return None

    evens = even_powers(ctx, n + 1)
    s = evens[n].T + t * evens[n].U
    if s != odd_power(ctx, n).V:
        raise VerificationError("witness_sum", expected=odd_power(ctx, n).V, computed=s)
    u_next = evens[n + 1].U

    for t1 in _divisors(t):
        t2 = t // t1
        lo, lo_rem = divmod(z - s, 2 * t1)
        hi, hi_rem = divmod(z + s, 2 * t2)
        if lo_rem or hi_rem:
            continue
        G, H = is_perfect_square(lo), is_perfect_square(hi)
        if not G or not H or 2 * G * H != u_next:
            continue
        witness = ThueWitness(t, n, z, t1, t2, G, H, -t1 * G, H)
        _check_witness(witness, u_next)
        logger.info("witness_found", t=t, n=n, t1=t1, x=witness.x, y=witness.y)
        return witness
    raise VerificationError("thue_decomposition", f"V_{4 * n + 3} = {z}^2 at t={t} has no t1, t2 split")


def witness_search(t: int, n_max: Optional[int] = None) -> List[ThueWitness]:
    """thue_witness for n = 1..n_max."""
    n_max = get_config().settings.limits.witness_n_max if n_max is None else n_max
    found = []
    for n in range(1, n_max + 1):
        witness = thue_witness(t, n)
        if witness is not None:
            found.append(witness)
    return found
