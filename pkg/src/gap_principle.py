"""
QuarticPell Gap Principle

The inequality engine: the constants c1, c2 of the two-term lower bound,
Stirling and X_r estimates, the gap inequality between two related
solutions, the floor for nonzero Lambda, and a replay of the induction that
pushes |xi_2| above every power of |xi_1| once t > 204.

Inequalities are certified with dyadic intervals on the configured
precision ladder; anything that reduces to integers is compared exactly.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence

from src.config import get_config
from src.errors import PreconditionError, UndecidedError
from src.exact_arith import Interval, binom_rat, decimal_str, pi_interval, pow_rat, refine
from src.observability import get_logger
from src.pade_hypergeometric import IDEAL_NORM_BOUNDS, TABLE_FLOORS
from src.quartic_forms import xi_abs8
from src.scan import run_chunks

logger = get_logger("gap_principle")

THRESHOLD_T = 204
SMALL = Fraction(1, 10)
LARGE = Fraction(9, 10)
MIN_MARGIN = Fraction(1, 1000)
# first r whose vanishing branch is not settled by the explicit tables
TABLE_R_MAX = 5


# =============================================================================
# CONSTANTS
# =============================================================================
@dataclass(frozen=True)
class GapConstants:
    r: int
    g: int
    t: int
    c1: Interval
    c2: Interval

    def describe(self, digits: int = 20) -> dict:
        return {"r": self.r, "g": self.g, "t": self.t,
                "c1": self.c1.describe(digits), "c2": self.c2.describe(digits)}


def _check_rgt(r: int, g: int, t: int) -> None:
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    if g not in (0, 1):
        raise PreconditionError(f"g must be 0 or 1, got {g}")
    if t < 1:
        raise PreconditionError(f"t must be >= 1, got {t}")


def gap_constants(r: int, g: int, t: int, prec: Optional[int] = None) -> GapConstants:
    """
    c1 = 2^(2r+1+g/4) t^(5/4+3g/8) / sqrt(pi r)
    c2 = 2^(1/2+g/4-2r) 3^(4r+2-2g) t^(4r+5/4-13g/8) / (pi sqrt(r))
    """
    _check_rgt(r, g, t)
    prec = prec or get_config().settings.intervals.start_bits
    pi = pi_interval(prec)
    c1 = (
        pow_rat(2, Fraction(8 * r + 4 + g, 4), prec)
        * pow_rat(t, Fraction(10 + 3 * g, 8), prec)
        / (pi * r).sqrt()
    )
    c2 = (
        pow_rat(2, Fraction(2 + g - 8 * r, 4), prec)
        * 3 ** (4 * r + 2 - 2 * g)
        * pow_rat(t, Fraction(32 * r + 10 - 13 * g, 8), prec)
        / (pi * Interval.exact(r, prec).sqrt())
    )
    return GapConstants(r, g, t, c1, c2)


# =============================================================================
# STIRLING AND X_r
# =============================================================================
def _stirling_exact(k: int, prec: int) -> bool:
    central = comb(2 * k, k)
    # 4^k / (2 sqrt k) <= C(2k, k)  <=>  16^k <= 4k C^2
    lower_ok = 16 ** k <= 4 * k * central * central
    # C(2k, k) < 4^k / sqrt(pi k)  <=>  pi k C^2 < 16^k
    pi = pi_interval(prec)
    upper_lhs = Fraction(k * central * central)
    if pi.hi * upper_lhs < 16 ** k:
        upper_ok = True
    elif pi.lo * upper_lhs >= 16 ** k:
        upper_ok = False
    else:
        raise UndecidedError(f"stirling upper bound at k={k}", prec)
    return lower_ok and upper_ok


def stirling_check(k: int) -> bool:
    """4^k / (2 sqrt k) <= C(2k, k) < 4^k / sqrt(pi k)."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    return refine(
        lambda bits: _stirling_exact(k, bits),
        context=f"stirling k={k}",
        **get_config().precision(),
    )


def _stirling_sweep(k_max: int, prec: int) -> List[int]:
    """Failing k, carrying C(2k, k) / 4^k as an interval."""
    failures = []
    pi = pi_interval(prec)
    ratio = Interval.exact(Fraction(1, 2), prec)
    for k in range(1, k_max + 1):
        if k > 1:
            ratio = ratio * Fraction(2 * k - 1, 2 * k)
        square = ratio * ratio
        scaled = square * (4 * k)
        lower = True if scaled.lo >= 1 else (False if scaled.hi < 1 else None)
        upper = (square * pi * k).lt(1)
        if lower is None or upper is None:
            raise UndecidedError(f"stirling sweep at k={k}", prec)
        if not (lower and upper):
            failures.append(k)
    return failures


def stirling_sweep(k_max: int) -> List[int]:
    """Every k <= k_max violating the Stirling bounds; empty when all hold."""
    started = time.perf_counter()
    failures = refine(
        lambda bits: _stirling_sweep(k_max, bits),
        context="stirling sweep",
        **get_config().precision(),
    )
    logger.info(
        "stirling_swept",
        k_max=k_max,
        failures=len(failures),
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    return failures


def x_r(r: int) -> Fraction:
    """X_r = C(r-3/4, r) C(r-1/4, r), exactly; X_1 = 3/16."""
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    return binom_rat(r - Fraction(3, 4), r) * binom_rat(r - Fraction(1, 4), r)


def _xr_exact(r: int, prec: int) -> bool:
    x = x_r(r)
    # X_r < 1 / (sqrt(2) pi r)  <=>  2 pi^2 r^2 X_r^2 < 1
    scaled = 2 * r * r * x * x
    pi2 = pi_interval(prec) ** 2
    verdict = (pi2 * scaled).lt(1)
    if verdict is None:
        raise UndecidedError(f"X_r bound at r={r}", prec)
    companion = binom_rat(r - Fraction(3, 4), r) > binom_rat(r + Fraction(1, 4), r + 1)
    return verdict and companion


def xr_bound_check(r: int) -> bool:
    """X_r < 1/(sqrt(2) pi r), and C(r-3/4, r) > C(r+1/4, r+1)."""
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    return refine(lambda bits: _xr_exact(r, bits), context=f"xr r={r}", **get_config().precision())


def _xr_sweep(r_max: int, prec: int) -> List[int]:
    failures = []
    pi = pi_interval(prec)
    root2 = Interval.exact(2, prec).sqrt()
    x = Interval.exact(Fraction(3, 16), prec)
    for r in range(1, r_max + 1):
        if r > 1:
            x = x * Fraction((4 * r - 3) * (4 * r - 1), 16 * r * r)
        verdict = (x * root2 * pi * r).lt(1)
        if verdict is None:
            raise UndecidedError(f"X_r sweep at r={r}", prec)
        # C(r+1/4, r+1) = C(r-3/4, r) (4r+1)/(4r+4), so the companion holds termwise
        if not verdict:
            failures.append(r)
    return failures


def xr_sweep(r_max: int) -> List[int]:
    """Every r <= r_max where X_r < 1/(sqrt(2) pi r) fails."""
    started = time.perf_counter()
    failures = refine(lambda bits: _xr_sweep(r_max, bits), context="xr sweep", **get_config().precision())
    logger.info(
        "xr_swept",
        r_max=r_max,
        failures=len(failures),
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    return failures


# =============================================================================
# GAP AND LAMBDA FLOOR
# =============================================================================
def gap_lower_bound(t: int, xi1_abs8: int, prec: Optional[int] = None) -> Interval:
    """(3/pi) t^(-5/4) |xi_1|^3 from the exact carrier |xi_1|^8."""
    if xi1_abs8 <= 0:
        raise PreconditionError("xi1_abs8 must be positive")
    prec = prec or get_config().settings.intervals.start_bits
    return (
        Interval.exact(3, prec)
        / pi_interval(prec)
        * pow_rat(t, Fraction(-5, 4), prec)
        * pow_rat(xi1_abs8, Fraction(3, 8), prec)
    )


def _gap_pair(t: int, abs8_1: int, abs8_2: int, prec: int) -> bool:
    # |xi2| > (3/pi) t^(-5/4) |xi1|^3  <=>  pi^8 t^10 |xi2|^8 > 3^8 |xi1|^24
    lhs = pi_interval(prec) ** 8 * (t ** 10 * abs8_2)
    verdict = lhs.gt(3 ** 8 * abs8_1 ** 3)
    if verdict is None:
        raise UndecidedError("gap inequality", prec)
    return verdict


def gap_pair_check(t: int, pair1: tuple[int, int], pair2: tuple[int, int]) -> bool:
    """The gap inequality between two integer points, from their |xi|^8 carriers."""
    abs8_1, abs8_2 = xi_abs8(t, *pair1), xi_abs8(t, *pair2)
    return refine(
        lambda bits: _gap_pair(t, abs8_1, abs8_2, bits),
        context="gap pair",
        **get_config().precision(),
    )


def lambda_floor(r: int, g: int, t: int, prec: Optional[int] = None) -> Interval:
    """2^(-g/4) t^(1/2 - 3g/8), the least possible |Lambda_{r,g}| when nonzero."""
    _check_rgt(r, g, t)
    prec = prec or get_config().settings.intervals.start_bits
    return pow_rat(2, Fraction(-g, 4), prec) * pow_rat(t, Fraction(4 - 3 * g, 8), prec)


# =============================================================================
# TWO-TERM LOWER BOUND
# =============================================================================
CERTIFIED = "certified"
REFUTED = "refuted"
UNDECIDED = "undecided"


def _height_lhs(r: int, g: int, t: int, abs8_1: int, abs8_2: int, prec: int) -> Interval:
    consts = gap_constants(r, g, t, prec)
    xi1 = Interval.exact(abs8_1, prec)
    xi2 = Interval.exact(abs8_2, prec)
    first = consts.c1 * xi1.pow_frac(Fraction(4 * r + 1 - g, 8)) * xi2.pow_frac(Fraction(-3, 8))
    second = consts.c2 * xi1.pow_frac(Fraction(-4 * r - 3 * (1 - g), 8)) * xi2.pow_frac(Fraction(1, 8))
    return first + second


def height_inequality(
    r: int,
    g: int,
    t: int,
    xi1_abs8: int,
    xi2_abs8: int,
) -> tuple[Interval, str]:
    """
    c1 |xi1|^(4r+1-g) |xi2|^-3 + c2 |xi1|^(-4r-3(1-g)) |xi2| and whether it
    exceeds 1: "certified", "refuted" or "undecided".
    """
    _check_rgt(r, g, t)
    if xi1_abs8 <= 0 or xi2_abs8 <= 0:
        raise PreconditionError("|xi|^8 carriers must be positive")

    def decide(bits: int) -> tuple[Interval, str]:
        lhs = _height_lhs(r, g, t, xi1_abs8, xi2_abs8, bits)
        verdict = lhs.gt(1)
        if verdict is None:
            raise UndecidedError("two-term lower bound", bits)
        return lhs, CERTIFIED if verdict else REFUTED

    try:
        return refine(decide, context="height_inequality", **get_config().precision())
    except UndecidedError as exc:
        lhs = _height_lhs(r, g, t, xi1_abs8, xi2_abs8, exc.bits or get_config().settings.intervals.max_bits)
        return lhs, UNDECIDED


# =============================================================================
# INDUCTION REPLAY
# =============================================================================
@dataclass(frozen=True)
class ChainCheck:
    """One displayed inequality lhs < rhs (or lhs >= rhs) of the induction."""
    r: int
    branch: str
    name: str
    lhs: Interval
    rhs: Interval
    relation: str

    @property
    def holds(self) -> bool:
        if self.relation == "<":
            return self.lhs.hi < self.rhs.lo
        return self.lhs.lo >= self.rhs.hi

    @property
    def margin(self) -> Fraction:
        """Relative slack: rhs/lhs - 1 for '<', lhs/rhs - 1 for '>='."""
        if self.relation == "<":
            return self.rhs.lo / self.lhs.hi - 1
        return self.lhs.lo / self.rhs.hi - 1

    @property
    def certified(self) -> bool:
        return self.holds and self.margin >= MIN_MARGIN

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "branch": self.branch,
            "name": self.name,
            "relation": self.relation,
            "lhs": self.lhs.describe(12),
            "rhs": self.rhs.describe(12),
            "margin": decimal_str(self.margin, 12) if self.holds else "-",
            "certified": self.certified,
        }


@dataclass
class ChainReport:
    t: int
    r_max: int
    checks: List[ChainCheck] = field(default_factory=list)
    goat_exponents: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.certified for c in self.checks)

    @property
    def final_exponent(self) -> Fraction:
        """|xi_2| > t^(7r/2 + 31/8) at r = r_max."""
        return Fraction(7 * self.r_max, 2) + Fraction(31, 8)

    def failures(self) -> List[ChainCheck]:
        return [c for c in self.checks if not c.certified]

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "r_max": self.r_max,
            "ok": self.ok,
            "goat_exponents": self.goat_exponents,
            "final_exponent": str(self.final_exponent),
            "checks": [c.to_dict() for c in self.checks],
        }


class _Replay:
    """Interval helpers for one (t, prec); L = 2^16 t^(15/2) bounds |xi_1|^4 from below."""

    def __init__(self, t: int, prec: int):
        self.t = t
        self.prec = prec
        self.pi = pi_interval(prec)
        self.L = pow_rat(2, 16, prec) * pow_rat(t, Fraction(15, 2), prec)

    def q(self, value) -> Interval:
        return Interval.exact(value, self.prec)

    def tpow(self, exponent: Fraction) -> Interval:
        return pow_rat(self.t, exponent, self.prec)

    def K(self, r: int) -> Interval:
        """sqrt(r) / (5 t^(4r+7/4)) (4/81)^r."""
        return self.q(r).sqrt() / 5 * self.tpow(Fraction(-16 * r - 7, 4)) * Fraction(4, 81) ** r

    def c1(self, r: int, g: int) -> Interval:
        return gap_constants(r, g, self.t, self.prec).c1

    def c2(self, r: int, g: int) -> Interval:
        return gap_constants(r, g, self.t, self.prec).c2

    def L_pow(self, exponent: Fraction) -> Interval:
        return self.L.pow_frac(exponent)


def _decided(check: ChainCheck, prec: int) -> ChainCheck:
    if check.relation == "<":
        undecided = check.lhs.lt(check.rhs) is None
    else:
        undecided = check.lhs.lo < check.rhs.hi and check.lhs.hi >= check.rhs.lo
    if undecided:
        raise UndecidedError(f"chain r={check.r} branch {check.branch}: {check.name}", prec)
    return check


def _base_checks(rp: _Replay) -> List[ChainCheck]:
    t, q = rp.t, rp.q
    displayed = q(Fraction(1, 2 ** 13)) / rp.pi.sqrt() * rp.tpow(Fraction(-5, 2))
    # c1(1,0) |xi1|^5 |xi2|^-3 with the gap inequality and |xi1|^4 > L
    derived = rp.c1(1, 0) * (rp.pi / 3) ** 3 * rp.tpow(Fraction(15, 4)) / rp.L
    return [
        ChainCheck(1, "base", "2^-13 pi^-1/2 t^-5/2 < 0.1", displayed, q(SMALL), "<"),
        ChainCheck(1, "base", "c1(1,0) (pi/3)^3 t^(15/4) / L < 0.1", derived, q(SMALL), "<"),
        ChainCheck(1, "base", "0.9 / c2(1,0) >= K_1", q(LARGE) / rp.c2(1, 0), rp.K(1), ">="),
    ]


def _branch_nonvanishing(rp: _Replay, r: int) -> List[ChainCheck]:
    """Sigma_{r+1,0} != 0: step from K_r to K_{r+1} with g = 0."""
    q = rp.q
    first = rp.c1(r + 1, 0) * rp.K(r) ** -3 * rp.L_pow(-(2 * r + 1))
    displayed = (
        q(125) / (q(2 ** 12) * rp.pi.sqrt() * r * r)
        * rp.tpow(-3 * r - 1)
        * Fraction(3 ** 12, 2 ** 36) ** r
    )
    second = q(LARGE) / rp.c2(r + 1, 0)
    return [
        ChainCheck(r, "A", "c1(r+1,0) K_r^-3 L^-(2r+1) < 0.1", first, q(SMALL), "<"),
        ChainCheck(r, "A", "125/(2^12 sqrt(pi) r^2) t^(-3r-1) (3^12/2^36)^r < 0.1", displayed, q(SMALL), "<"),
        ChainCheck(r, "A", "0.9 / c2(r+1,0) >= K_(r+1)", second, rp.K(r + 1), ">="),
    ]


def _branch_vanishing(rp: _Replay, r: int) -> List[ChainCheck]:
    """Sigma_{r+1,0} = 0: pass through g = 1 at r+1 and r+2."""
    q = rp.q
    first = rp.c1(r + 1, 1) * rp.K(r) ** -3 * rp.L_pow(Fraction(-(8 * r + 5), 4))
    k_prime = q(LARGE) / rp.c2(r + 1, 1)
    k_prime_floor = (
        q(Fraction(8, 100)) * q(r + 1).sqrt()
        * rp.tpow(Fraction(-32 * r - 29, 8))
        * Fraction(4, 81) ** r
    )
    third = rp.c1(r + 2, 1) * k_prime ** -3 * rp.L_pow(-(2 * r + 1))
    displayed = (
        q(Fraction(1, 2 * (r + 1) ** 2))
        * Fraction(3 ** 12, 2 ** 36) ** r
        * rp.tpow(5 - 3 * r)
    )
    fourth = q(LARGE) / rp.c2(r + 2, 1) * 16 * rp.tpow(Fraction(15, 8))
    return [
        ChainCheck(r, "B", "c1(r+1,1) K_r^-3 L^-((8r+5)/4) < 0.1", first, q(SMALL), "<"),
        ChainCheck(r, "B", "0.9 / c2(r+1,1) >= 0.08 sqrt(r+1) t^(-4r-29/8) (4/81)^r", k_prime, k_prime_floor, ">="),
        ChainCheck(r, "B", "c1(r+2,1) K'^-3 L^-(2r+1) < 0.1", third, q(SMALL), "<"),
        ChainCheck(r, "B", "1/(2(r+1)^2) (3^12/2^36)^r t^(5-3r) < 0.1", displayed, q(SMALL), "<"),
        ChainCheck(r, "B", "16 t^(15/8) 0.9 / c2(r+2,1) >= K_(r+1)", fourth, rp.K(r + 1), ">="),
    ]


def _final_check(rp: _Replay, r: int) -> ChainCheck:
    lhs = rp.K(r) * (rp.q(16) * rp.tpow(Fraction(15, 8))) ** (4 * r + 3)
    rhs = rp.tpow(Fraction(28 * r + 31, 8))
    return ChainCheck(r, "final", "K_r (16 t^(15/8))^(4r+3) >= t^(7r/2+31/8)", lhs, rhs, ">=")


def _replay(t: int, r_max: int, prec: int) -> ChainReport:
    rp = _Replay(t, prec)
    report = ChainReport(t, r_max)
    checks = _base_checks(rp)
    for r in range(1, r_max):
        checks.extend(_branch_nonvanishing(rp, r))
        if r >= TABLE_R_MAX:
            checks.extend(_branch_vanishing(rp, r))
    for r in range(1, r_max + 1):
        checks.append(_final_check(rp, r))
        report.goat_exponents.append(4 * r + 3)
    report.checks = [_decided(c, prec) for c in checks]
    return report


def chain_replay(t: int, r_max: int) -> ChainReport:
    """
    Replay the induction
        |xi_2| > sqrt(r) / (5 t^(4r+7/4)) (4/81)^r |xi_1|^(4r+3)
    for one t > 204, from the gap inequality and |xi_1|^4 > 2^16 t^(15/2).

    Every displayed step is an interval comparison; a failed or too-thin
    step leaves report.ok False rather than raising.
    """
    if t <= THRESHOLD_T:
        raise PreconditionError(f"the induction assumes t > {THRESHOLD_T}, got {t}")
    if r_max < 1:
        raise PreconditionError("r_max must be >= 1")
    started = time.perf_counter()
    report = refine(
        lambda bits: _replay(t, r_max, bits),
        context=f"chain t={t}",
        **get_config().precision(),
    )
    logger.info(
        "chain_replayed",
        t=t,
        r_max=r_max,
        checks=len(report.checks),
        ok=report.ok,
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    for failed in report.failures():
        logger.warning("chain_step_failed", t=t, r=failed.r, branch=failed.branch, step=failed.name)
    return report


def chain_grid_chunk(items: Sequence[tuple[int, int]]) -> List[ChainReport]:
    return [chain_replay(t, r_max) for t, r_max in items]


def chain_grid(ts: Sequence[int], r_max: int, jobs: int = 1) -> List[ChainReport]:
    """chain_replay for every t, one t per work unit."""
    return run_chunks(chain_grid_chunk, [(t, r_max) for t in ts], jobs, chunk_size=1, label="chain")


# =============================================================================
# CLOSING INEQUALITIES
# =============================================================================
@dataclass(frozen=True)
class IdolCheck:
    """2^(26r-3) t^(11r-2) < (N_r / F_r) 8^(2r+1) t^(4r+2), which must fail."""
    r: int
    t: int
    lhs: int
    rhs: Fraction

    @property
    def refuted(self) -> bool:
        return not self.lhs < self.rhs


def idol_check(r: int, t: int) -> IdolCheck:
    """Exact; r = 1 reads 2^23 t^9 against 6635.52 t^6."""
    if r not in IDEAL_NORM_BOUNDS:
        raise PreconditionError(f"r must be in 1..5, got {r}")
    if t < 1:
        raise PreconditionError("t must be >= 1")
    lhs = 2 ** (26 * r - 3) * t ** (11 * r - 2)
    rhs = Fraction(IDEAL_NORM_BOUNDS[r], TABLE_FLOORS[r]) * 8 ** (2 * r + 1) * t ** (4 * r + 2)
    return IdolCheck(r, t, lhs, rhs)


def _exclusion(t: int, prec: int) -> bool:
    pi = pi_interval(prec)
    # (pi/12) 8 t^2 / (2^16 t^(15/2))
    lhs = pi / 12 * 8 * pow_rat(t, 2, prec) / (pow_rat(2, 16, prec) * pow_rat(t, Fraction(15, 2), prec))
    rhs = Interval.exact(2, prec) / (5 * Interval.exact(80 * t * t + 85 * t, prec).sqrt())
    verdict = lhs.lt(rhs)
    if verdict is None:
        raise UndecidedError(f"exclusion at t={t}", prec)
    return verdict


def exclusion_check(t: int) -> bool:
    """(pi/12) |z| stays below 2 / (5 sqrt(80t^2 + 85t)) for t > 204."""
    if t <= THRESHOLD_T:
        raise PreconditionError(f"exclusion_check assumes t > {THRESHOLD_T}")
    return refine(lambda bits: _exclusion(t, bits), context="exclusion", **get_config().precision())
