"""
QuarticPell Quartic Forms

The quartic form

    P(x, y) = x^4 + 4t x^3 y - 6t x^2 y^2 - 4t^2 x y^3 + t^2 y^4

its resolvent fourth powers xi^4, eta^4 in Z[omega] (omega^2 = -t), the
quantity z = 1 - eta^4/xi^4, the brackets of the four real roots of P(x, 1),
and the classification of integer pairs by nearest fourth root of unity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from src.config import get_config
from src.errors import PreconditionError, UndecidedError, VerificationError
from src.exact_arith import (
    ComplexInterval,
    IntForm,
    Interval,
    RingElem,
    RingFraction,
    interval_from_sqrt,
    pi_interval,
    refine,
)
from src.observability import get_logger

logger = get_logger("quartic_forms")

ROOT_BOUNDS_MIN_T = 18
FOURTH_ROOTS_OF_UNITY = ((1, 0), (0, 1), (-1, 0), (0, -1))


# =============================================================================
# THE FORM
# =============================================================================
@dataclass(frozen=True)
class QuarticForm:
    """P(x, y) for one value of t."""
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise PreconditionError(f"t must be >= 1, got {self.t}")

    @property
    def form(self) -> IntForm:
        t = self.t
        return IntForm((1, 4 * t, -6 * t, -4 * t * t, t * t))

    def __call__(self, x, y):
        return self.form(x, y)


def eval_P(form: QuarticForm, x: int, y: int) -> int:
    return form(x, y)


# =============================================================================
# RESOLVENTS
# =============================================================================
@dataclass(frozen=True)
class ResolventPoint:
    """xi^4, eta^4 and z at one integer point."""
    t: int
    x: int
    y: int
    xi4: RingElem
    eta4: RingElem
    z: RingFraction

    @property
    def p_value(self) -> int:
        return (self.xi4 - self.eta4).a // 8


def resolvent(t: int, x: int, y: int) -> ResolventPoint:
    """
    xi^4 = 4(omega+1)(x - omega y)^4 and eta^4 = 4(omega-1)(x + omega y)^4.

    Raises VerificationError if xi^4 - eta^4 differs from 8P(x, y).
    """
    if x == 0 and y == 0:
        raise PreconditionError("resolvent needs (x, y) != (0, 0)")
    d = -t
    omega = RingElem.omega(d)
    xi4 = 4 * (omega + 1) * (x - omega * y) ** 4
    eta4 = 4 * (omega - 1) * (x + omega * y) ** 4
    p_value = QuarticForm(t)(x, y)
    difference = xi4 - eta4
    if difference != RingElem.scalar(8 * p_value, d):
        raise VerificationError(
            "resolvent_difference", expected=8 * p_value, computed=str(difference)
        )
    z = RingFraction.quotient(RingElem.scalar(8 * p_value, d), xi4)
    return ResolventPoint(t, x, y, xi4, eta4, z)


def xi_abs8(t: int, x: int, y: int) -> int:
    """|xi|^8 = |xi^4|^2 = 16(t+1)(x^2 + t y^2)^4."""
    if x == 0 and y == 0:
        raise PreconditionError("xi_abs8 needs (x, y) != (0, 0)")
    return 16 * (t + 1) * (x * x + t * y * y) ** 4


def raccoon_check(t: int, x: int, y: int) -> Optional[bool]:
    """
    When xy > 64t^3, check |xi|^4 > 2^16 t^(15/2) in the squared integer form
    |xi|^8 > 2^32 t^15. Returns None when the threshold is not met.
    """
    if x <= 0 or y <= 0:
        raise PreconditionError("raccoon_check needs positive x, y")
    if x * y <= 64 * t ** 3:
        return None
    holds = xi_abs8(t, x, y) > 2 ** 32 * t ** 15
    if not holds:
        raise VerificationError("xi_height_threshold", f"|xi|^8 <= 2^32 t^15 at t={t}, ({x}, {y})")
    return holds


@dataclass(frozen=True)
class XiLowerBound:
    t: int
    x: int
    y: int
    xi_abs8: int
    height_ok: bool
    z_bound_ok: Optional[bool]
    z_below_one: bool


def xi4_lower_bound(t: int, x: int, y: int) -> XiLowerBound:
    """
    |xi^4|^2 >= 16(1+t)^5 for xy != 0, and |z| <= 2t^2/(t+1)^(5/2) when
    0 < |P(x, y)| <= t^2. Both compared exactly through |z|^2 = 64P^2/|xi|^8.
    """
    if x == 0 or y == 0:
        raise PreconditionError("xi4_lower_bound needs xy != 0")
    carrier = xi_abs8(t, x, y)
    p_value = QuarticForm(t)(x, y)
    z_bound_ok = None
    if 0 < abs(p_value) <= t * t:
        z_bound_ok = 64 * p_value ** 2 * (t + 1) ** 5 <= 4 * t ** 4 * carrier
    return XiLowerBound(
        t=t,
        x=x,
        y=y,
        xi_abs8=carrier,
        height_ok=carrier >= 16 * (1 + t) ** 5,
        z_bound_ok=z_bound_ok,
        z_below_one=64 * p_value ** 2 < carrier,
    )


@lru_cache(maxsize=256)
def resolvent_constants(t: int, prec: int) -> tuple[ComplexInterval, ComplexInterval]:
    """Principal fourth roots c of 4(1+omega) and c' of 4(omega-1)."""
    omega = RingElem.omega(-t)
    c = (4 * (omega + 1)).to_complex(prec).fourth_root()
    c_prime = (4 * (omega - 1)).to_complex(prec).fourth_root()
    return c, c_prime


def xi_eta(t: int, x: int, y: int, prec: int) -> tuple[ComplexInterval, ComplexInterval]:
    """Enclosures of xi = c(x - omega y) and eta = c'(x + omega y)."""
    c, c_prime = resolvent_constants(t, prec)
    xi = c * RingElem(x, -y, -t).to_complex(prec)
    eta = c_prime * RingElem(x, y, -t).to_complex(prec)
    return xi, eta


# =============================================================================
# ROOT BRACKETS
# =============================================================================
@dataclass(frozen=True)
class RootBounds:
    """
    Certified brackets of the real roots beta_1..beta_4 of P(x, 1).

    Each bracket [lo, hi] is a pair of rationals inside the displayed
    closed-form bracket with P(lo, 1) P(hi, 1) < 0.
    """
    t: int
    brackets: tuple[Interval, Interval, Interval, Interval]
    endpoint_values: tuple[tuple[Fraction, Fraction], ...]
    nominal_widths: tuple[Fraction, Fraction, Fraction, Fraction]


def nominal_widths(t: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact widths of the closed-form brackets (sqrt(t) cancels)."""
    return (
        Fraction(1, 8 * t),
        Fraction(1, 8 * t),
        Fraction(1, 512 * t * t),
        Fraction(3, 512 * t * t),
    )


def _closed_form_brackets(t: int, prec: int) -> list[tuple[Interval, Interval]]:
    s = interval_from_sqrt(t, prec)
    inv_s = s.reciprocal() / 8
    q = Fraction(1, 8 * t)
    q2 = Fraction(1, 512 * t * t)
    beta1 = s + Fraction(1, 2) + inv_s
    beta2 = -s + Fraction(1, 2) - inv_s
    beta3 = Fraction(1, 4) - Fraction(5, 64 * t)
    beta4 = -4 * t - Fraction(5, 4) + Fraction(21, 64 * t)
    return [
        (beta1 - 2 * q, beta1 - q),
        (beta2 - q, beta2),
        (Interval.exact(beta3 + 22 * q2, prec), Interval.exact(beta3 + 23 * q2, prec)),
        (Interval.exact(beta4 - 87 * q2, prec), Interval.exact(beta4 - 84 * q2, prec)),
    ]


def _certify_brackets(t: int, prec: int) -> RootBounds:
    form = QuarticForm(t)
    brackets = []
    values = []
    for index, (lower, upper) in enumerate(_closed_form_brackets(t, prec), start=1):
        # inner rational points: lo >= closed-form lower, hi <= closed-form upper
        lo, hi = lower.hi, upper.lo
        if lo >= hi:
            raise UndecidedError(f"bracket of beta_{index} collapsed", prec)
        p_lo, p_hi = form(lo, 1), form(hi, 1)
        if p_lo * p_hi >= 0:
            raise VerificationError(
                "root_sign_change",
                f"P(x, 1) does not change sign on the beta_{index} bracket at t={t}",
                expected="opposite signs",
                computed=(str(p_lo), str(p_hi)),
            )
        brackets.append(Interval(lo, hi, prec))
        values.append((p_lo, p_hi))

    ordered = sorted(brackets, key=lambda b: b.lo)
    for left, right in zip(ordered, ordered[1:]):
        if left.hi >= right.lo:
            raise VerificationError("root_brackets_disjoint", f"overlapping brackets at t={t}")
    return RootBounds(t, tuple(brackets), tuple(values), nominal_widths(t))


def root_bounds(t: int) -> RootBounds:
    """Certified brackets for beta_1..beta_4; requires t >= 18."""
    if t < ROOT_BOUNDS_MIN_T:
        raise PreconditionError(f"root brackets need t >= {ROOT_BOUNDS_MIN_T}, got {t}")
    return refine(
        lambda bits: _certify_brackets(t, bits),
        context=f"root_bounds t={t}",
        **get_config().precision(),
    )


@dataclass(frozen=True)
class BetaDistances:
    ratio: Fraction
    beta1_ok: bool
    beta3_ok: bool
    beta4_ok: bool

    @property
    def ok(self) -> bool:
        return self.beta1_ok and self.beta3_ok and self.beta4_ok


def beta_distance_check(t: int, x: int, y: int) -> BetaDistances:
    """
    For -2 sqrt(t) < x/y < 0: |x/y - beta_1| > sqrt(t), |x/y - beta_3| > 1/5
    and |x/y - beta_4| > 2t, using the certified brackets.
    """
    if y == 0:
        raise PreconditionError("beta_distance_check needs y != 0")
    ratio = Fraction(x, y)
    if not (ratio < 0 and ratio * ratio < 4 * t):
        raise PreconditionError("beta_distance_check needs -2 sqrt(t) < x/y < 0")
    bounds = root_bounds(t)
    beta1, _, beta3, beta4 = bounds.brackets
    s = interval_from_sqrt(t, get_config().settings.intervals.start_bits)
    # beta_1, beta_3 lie right of x/y and beta_4 left of it
    beta1_ok = s.lt(beta1.lo - ratio) is True
    beta3_ok = beta3.lo - ratio > Fraction(1, 5)
    beta4_ok = ratio - beta4.hi > 2 * t
    return BetaDistances(ratio, beta1_ok, beta3_ok, beta4_ok)


# =============================================================================
# RELATEDNESS
# =============================================================================
@dataclass(frozen=True)
class Relatedness:
    """
    Nearest fourth root of unity i^j to eta/xi and the margin
    |i^j - eta/xi| - (pi/12)|z|; negative margin means the pair is related.
    """
    j: int
    margin: Interval
    ratio_abs: Interval
    related: Optional[bool]


def _classify(t: int, x: int, y: int, p_value: int, prec: int) -> Relatedness:
    xi, eta = xi_eta(t, x, y, prec)
    ratio = eta / xi
    distances = []
    for re, im in FOURTH_ROOTS_OF_UNITY:
        target = ComplexInterval.exact(re, im, prec)
        distances.append(abs(ratio - target))
    j = min(range(4), key=lambda i: distances[i].mid)
    z_abs = Interval.exact(8 * abs(p_value), prec) / Interval.exact(xi_abs8(t, x, y), prec).sqrt()
    margin = distances[j] - pi_interval(prec) / 12 * z_abs
    if margin.contains_zero():
        raise UndecidedError(f"relatedness margin at ({x}, {y})", prec)
    return Relatedness(j, margin, abs(ratio), margin.is_negative())


def classify_related(t: int, x: int, y: int) -> Relatedness:
    if x == 0 and y == 0:
        raise PreconditionError("classify_related needs (x, y) != (0, 0)")
    p_value = QuarticForm(t)(x, y)
    if p_value == 0:
        raise PreconditionError("classify_related needs P(x, y) != 0")
    result = refine(
        lambda bits: _classify(t, x, y, p_value, bits),
        context=f"classify_related t={t}",
        **get_config().precision(),
    )
    logger.debug("pair_classified", t=t, x=x, y=y, root=result.j, related=result.related)
    return result


# =============================================================================
# WRONSKIAN
# =============================================================================
@dataclass(frozen=True)
class WronskianReport:
    determinant: int
    wronskian_abs: Interval
    expected_abs: Interval
    identity_ok: bool
    bound_ok: bool

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.bound_ok


def _wronskian(t: int, pair1: tuple[int, int], pair2: tuple[int, int], prec: int) -> WronskianReport:
    (x1, y1), (x2, y2) = pair1, pair2
    det = x1 * y2 - x2 * y1
    xi1, eta1 = xi_eta(t, x1, y1, prec)
    xi2, eta2 = xi_eta(t, x2, y2, prec)
    w_abs = abs(xi1 * eta2 - xi2 * eta1)
    scale = Interval.exact(t + 1, prec).root(4) * interval_from_sqrt(t, prec) * 4
    expected = scale * abs(det)
    if not w_abs.overlaps(expected):
        return WronskianReport(det, w_abs, expected, False, False)
    slack = Fraction(1, 2 ** (prec // 2))
    if w_abs.width > slack * expected.hi:
        raise UndecidedError("wronskian enclosure too wide", prec)
    # |det| >= 1 turns the identity into the lower bound
    bound_ok = w_abs.lo >= scale.lo * (1 - 2 * slack)
    return WronskianReport(det, w_abs, expected, True, bound_ok)


def wronskian_report(t: int, pair1: tuple[int, int], pair2: tuple[int, int]) -> WronskianReport:
    if pair1[0] * pair2[1] == pair2[0] * pair1[1]:
        raise PreconditionError("wronskian_check needs x1 y2 != x2 y1")
    return refine(
        lambda bits: _wronskian(t, pair1, pair2, bits),
        context="wronskian",
        **get_config().precision(),
    )


def wronskian_check(t: int, pair1: tuple[int, int], pair2: tuple[int, int]) -> bool:
    """|xi1 eta2 - xi2 eta1| = 4 (t+1)^(1/4) sqrt(t) |x1 y2 - x2 y1| >= 4 sqrt(t) (t+1)^(1/4)."""
    return wronskian_report(t, pair1, pair2).ok
