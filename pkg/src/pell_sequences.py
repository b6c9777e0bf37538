"""
QuarticPell Pell Sequences

Sequences attached to tau = sqrt(t+1) + sqrt(t):

    tau^(2k+1) = V_{2k+1} sqrt(t+1) + W_{2k+1} sqrt(t)
    tau^(2k)   = T_k + U_k sqrt(t(t+1))

and the fundamental solution of a v^2 - b w^2 = 1 by continued fractions.
All values are exact integers; recurrences step by tau^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, List, Optional, Sequence

from src.errors import DegeneratePellError, PreconditionError, VerificationError
from src.exact_arith import integer_root, is_perfect_square
from src.observability import get_logger
from src.scan import run_chunks

logger = get_logger("pell_sequences")


# =============================================================================
# TYPES
# =============================================================================
@dataclass(frozen=True)
class PellContext:
    """The parameter t of tau = sqrt(t+1) + sqrt(t)."""
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise PreconditionError(f"t must be >= 1, got {self.t}")


@dataclass(frozen=True)
class OddPower:
    """V_{2k+1}, W_{2k+1}; index = 2k+1."""
    k: int
    V: int
    W: int

    @property
    def index(self) -> int:
        return 2 * self.k + 1

    def holds(self, t: int) -> bool:
        return (t + 1) * self.V * self.V - t * self.W * self.W == 1


@dataclass(frozen=True)
class EvenPower:
    """T_k, U_k."""
    k: int
    T: int
    U: int

    def holds(self, t: int) -> bool:
        return self.T * self.T - t * (t + 1) * self.U * self.U == 1


@dataclass(frozen=True)
class PellFundamental:
    """Least positive solution of a v^2 - b w^2 = 1."""
    a: int
    b: int
    v: int
    w: int

    def holds(self) -> bool:
        return self.a * self.v * self.v - self.b * self.w * self.w == 1


# =============================================================================
# SEQUENCES
# =============================================================================
def iter_odd_powers(ctx: PellContext) -> Iterator[OddPower]:
    """V_1, W_1 = 1, 1, then one multiplication by tau^2 per step."""
    t = ctx.t
    v, w, k = 1, 1, 0
    while True:
        yield OddPower(k, v, w)
        v, w = (2 * t + 1) * v + 2 * t * w, 2 * (t + 1) * v + (2 * t + 1) * w
        k += 1


def iter_even_powers(ctx: PellContext) -> Iterator[EvenPower]:
    t = ctx.t
    big_t, u, k = 1, 0, 0
    while True:
        yield EvenPower(k, big_t, u)
        big_t, u = (2 * t + 1) * big_t + 2 * t * (t + 1) * u, 2 * big_t + (2 * t + 1) * u
        k += 1


def odd_power(ctx: PellContext, k: int) -> OddPower:
    if k < 0:
        raise PreconditionError("k must be >= 0")
    for item in iter_odd_powers(ctx):
        if item.k == k:
            if not item.holds(ctx.t):
                raise VerificationError("odd_power_norm", f"(t+1)V^2 - tW^2 != 1 at k={k}")
            return item
    raise AssertionError("unreachable")


def even_power(ctx: PellContext, k: int) -> EvenPower:
    if k < 0:
        raise PreconditionError("k must be >= 0")
    for item in iter_even_powers(ctx):
        if item.k == k:
            if not item.holds(ctx.t):
                raise VerificationError("even_power_norm", f"T^2 - t(t+1)U^2 != 1 at k={k}")
            return item
    raise AssertionError("unreachable")


def odd_powers(ctx: PellContext, k_max: int) -> List[OddPower]:
    """V_{2k+1}, W_{2k+1} for k = 0..k_max."""
    out = []
    for item in iter_odd_powers(ctx):
        if item.k > k_max:
            break
        out.append(item)
    return out


def even_powers(ctx: PellContext, k_max: int) -> List[EvenPower]:
    out = []
    for item in iter_even_powers(ctx):
        if item.k > k_max:
            break
        out.append(item)
    return out


def v3_formula(t: int) -> int:
    return 1 + 4 * t


def v7_closed_form(t: int) -> int:
    return 64 * t ** 3 + 80 * t ** 2 + 24 * t + 1


def v11_closed_form(t: int) -> int:
    x = 4 * t
    return ((((x + 9) * x + 28) * x + 35) * x + 15) * x + 1


def cross_identity(ctx: PellContext, n: int) -> dict:
    """
    Check V_{4n+3} = t U_{n+1}^2 + V_{2n+1}^2, U_{n+1} = 2T_n + (2t+1)U_n and
    gcd(U_n, T_n) = 1 for one index n.
    """
    t = ctx.t
    v_big = odd_power(ctx, 2 * n + 1).V
    v_small = odd_power(ctx, n).V
    evens = even_powers(ctx, n + 1)
    t_n, u_n, u_next = evens[n].T, evens[n].U, evens[n + 1].U
    return {
        "n": n,
        "square_split": v_big == t * u_next * u_next + v_small * v_small,
        "u_step": u_next == 2 * t_n + (2 * t + 1) * u_n,
        "coprime": gcd(u_n, t_n) == 1,
    }


def sequence_table(ctx: PellContext, k_max: int) -> List[dict]:
    """Rows of (k, V, W, T, U) with their norm checks, for reports."""
    rows = []
    for odd, even in zip(odd_powers(ctx, k_max), even_powers(ctx, k_max)):
        rows.append({
            "k": odd.k,
            "V": odd.V,
            "W": odd.W,
            "T": even.T,
            "U": even.U,
            "odd_norm_ok": odd.holds(ctx.t),
            "even_norm_ok": even.holds(ctx.t),
            "V_is_square": is_perfect_square(odd.V) is not None,
        })
    return rows


# =============================================================================
# V7 / V11 SQUARE SCAN
# =============================================================================
def scan_v7_v11_chunk(ts: Sequence[int]) -> List[tuple[int, int]]:
    """Hits (t, index) in one chunk; top level so worker processes can pickle it."""
    hits = []
    for t in ts:
        if is_perfect_square(v7_closed_form(t)) is not None:
            hits.append((t, 7))
        if is_perfect_square(v11_closed_form(t)) is not None:
            hits.append((t, 11))
    return hits


def v7_v11_square_scan(
    t_lo: int,
    t_hi: int,
    jobs: int = 1,
    chunk_size: int = 20_000,
) -> List[tuple[int, int]]:
    """Every t in [t_lo, t_hi] where V_7 or V_11 is a perfect square."""
    if t_lo < 1:
        raise PreconditionError("t_lo must be >= 1")
    if t_hi < t_lo:
        return []
    hits = run_chunks(scan_v7_v11_chunk, range(t_lo, t_hi + 1), jobs, chunk_size, label="v7_v11")
    for t, index in hits:
        logger.info("square_found", t=t, index=index)
    return hits


# =============================================================================
# FUNDAMENTAL SOLUTION
# =============================================================================
def _convergents(D: int, periods: int) -> Iterator[tuple[int, int]]:
    """Convergents p/q of sqrt(D) over the given number of full periods."""
    a0, exact = integer_root(D, 2)
    if exact:
        raise DegeneratePellError(f"{D} is a perfect square")
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    seen = 0
    yield p, q
    while seen < periods:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q
        if a == 2 * a0:
            seen += 1


def pell_fundamental(a: int, b: int) -> Optional[PellFundamental]:
    """
    Least positive (v, w) with a v^2 - b w^2 = 1, or None when insolvable.

    With D = ab the equation becomes (av)^2 - D w^2 = a (or, swapping roles,
    (bw)^2 - D v^2 = -b). The smaller of a, b is below sqrt(D), so every
    primitive solution is a convergent of sqrt(D); two periods suffice.
    """
    if a < 1 or b < 1:
        raise PreconditionError("a and b must be positive")
    D = a * b
    if is_perfect_square(D) is not None:
        raise DegeneratePellError(f"ab = {D} is a perfect square")

    if a < b:
        target, modulus = a, a
    else:
        target, modulus = -b, b

    for p, q in _convergents(D, periods=2):
        if p * p - D * q * q == target and p % modulus == 0:
            if a < b:
                found = PellFundamental(a, b, p // a, q)
            else:
                found = PellFundamental(a, b, q, p // b)
            if not found.holds():
                raise VerificationError("pell_fundamental", f"{found} does not solve the equation")
            return found
    return None
