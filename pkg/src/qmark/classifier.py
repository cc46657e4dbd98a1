"""Derivative classification of ?'(x) for quadratic irrationals.

Inputs are eventually periodic continued fractions, the only class where
the average partial quotient is an exact rational and every comparison
can be certified.  Rules, in order: average below kappa_1 forces an
infinite derivative, average above kappa_2 forces zero, all quotients
bounded by 4 forces infinite, and otherwise the sign of the periodic
exponent P = 2 ln(beta) - (period sum) ln 2 decides, where beta is the
dominant eigenvalue of the period's continuant-matrix product.  P > 0
makes the lower sandwich bound diverge along periods, P < 0 makes the
upper bound vanish.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from .cf import CFSpec, continuant
from .constants import MAX_BITS, default_bits, kappas, spectral
from .errors import (
    ConstructionError,
    DomainError,
    OutOfWindowError,
    PrecisionError,
    RationalInputError,
    SizeError,
)
from .interval import Interval, ln2_enclosure, ln_enclosure, sqrt_int_enclosure

MAX_TREND_DEPTH = 5000
_TREND_BITS = 32  # certified well below the 1e-6 documentation for logs


class Verdict(enum.Enum):
    INFINITE = "Infinite"
    ZERO = "Zero"
    UNKNOWN = "Unknown"


class Rule(enum.Enum):
    THM1 = "Thm1"
    THM2 = "Thm2"
    THM3 = "Thm3"
    PERIODIC_EXPONENT = "PeriodicExponent"
    NONE = "None"


@dataclass(frozen=True)
class PeriodicExponent:
    period: tuple
    trace: int
    det: int
    beta_log: Interval
    P: Interval

    def __post_init__(self):
        # beta sits between the period's continuant and the product of
        # the per-digit growth rates lambda_{a_i}.
        bits = 32
        low = ln_enclosure(Fraction(continuant(self.period)), bits)
        high = Interval.point(0)
        digit_counts: dict[int, int] = {}
        for a in self.period:
            digit_counts[a] = digit_counts.get(a, 0) + 1
        for a, count in digit_counts.items():
            high = high + ln_enclosure(spectral(a, bits).lam.hi, bits) * count
        assert self.beta_log.hi >= low.lo
        assert self.beta_log.lo <= high.hi


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    rule: Rule
    average: Fraction
    margin: Interval
    exponent: PeriodicExponent | None

    def __post_init__(self):
        if self.verdict is not Verdict.UNKNOWN:
            assert not (self.margin.lo <= 0 <= self.margin.hi)


def limit_average(spec: CFSpec) -> Fraction:
    """lim (a_1+...+a_t)/t; the preperiod drops out of the limit."""
    if spec.is_rational:
        raise RationalInputError("finite continued fraction has no limit average")
    return Fraction(sum(spec.period), len(spec.period))


def _period_matrix(period: tuple) -> tuple:
    a11, a12, a21, a22 = 1, 0, 0, 1
    for a in period:
        a11, a12 = a11 * a + a12, a11
        a21, a22 = a21 * a + a22, a21
    return a11, a12, a21, a22


@lru_cache(maxsize=None)
def _periodic_exponent_cached(period: tuple, bits: int) -> PeriodicExponent:
    work = bits + 16
    a11, a12, a21, a22 = _period_matrix(period)
    trace = a11 + a22
    det = a11 * a22 - a12 * a21
    disc = trace * trace - 4 * det
    root = sqrt_int_enclosure(disc, work)
    beta = (root + trace) * Fraction(1, 2)
    beta_log = Interval(
        ln_enclosure(beta.lo, work).lo, ln_enclosure(beta.hi, work).hi
    )
    P = beta_log * 2 - ln2_enclosure(work) * sum(period)
    return PeriodicExponent(
        period=period,
        trace=trace,
        det=det,
        beta_log=beta_log.outward(bits),
        P=P.outward(bits),
    )


def periodic_exponent(period, bits: int | None = None) -> PeriodicExponent:
    period = tuple(int(a) for a in period)
    if not period:
        raise DomainError("period must be nonempty")
    if any(a < 1 for a in period):
        raise DomainError("partial quotients must be positive")
    return _periodic_exponent_cached(period, bits or default_bits())


def _certified_exponent(period: tuple, bits: int) -> PeriodicExponent:
    """Periodic exponent with a certified sign, refining to 2^-MAX_BITS."""
    while True:
        exp = periodic_exponent(period, bits)
        if exp.P.is_positive() or exp.P.is_negative():
            return exp
        if bits >= MAX_BITS:
            raise PrecisionError(
                f"sign of the periodic exponent undecided at {bits} bits"
            )
        bits = min(2 * bits, MAX_BITS)


def _compare_average(avg: Fraction, which: str, bits: int) -> tuple:
    """('lt'|'gt', margin) for avg against kappa_1 or kappa_2, certified."""
    while True:
        k = kappas(bits)
        threshold = k.kappa1 if which == "kappa1" else k.kappa2
        if threshold.certainly_gt(avg):
            return "lt", threshold - avg
        if threshold.certainly_lt(avg):
            return "gt", Interval.point(avg) - threshold
        if bits >= MAX_BITS:
            raise PrecisionError(
                f"average {avg} indistinguishable from {which} at {bits} bits"
            )
        bits = min(2 * bits, MAX_BITS)


def classify(spec: CFSpec, bits: int | None = None) -> Classification:
    """Verdict on ?'(x) for the quadratic irrational given by spec."""
    if spec.is_rational:
        raise RationalInputError("classification needs an eventually periodic input")
    bits = bits or default_bits()
    avg = limit_average(spec)

    side1, margin1 = _compare_average(avg, "kappa1", bits)
    if side1 == "lt":
        return Classification(Verdict.INFINITE, Rule.THM1, avg, margin1, None)
    side2, margin2 = _compare_average(avg, "kappa2", bits)
    if side2 == "gt":
        return Classification(Verdict.ZERO, Rule.THM2, avg, margin2, None)
    if all(a <= 4 for a in spec.preperiod + spec.period):
        exp = _certified_exponent(spec.period, bits)
        if not exp.P.is_positive():
            raise ConstructionError(
                f"bounded-by-4 period {spec.period} has non-positive exponent {exp.P}"
            )
        return Classification(Verdict.INFINITE, Rule.THM3, avg, exp.P, exp)
    exp = _certified_exponent(spec.period, bits)
    if exp.P.is_positive():
        return Classification(Verdict.INFINITE, Rule.PERIODIC_EXPONENT, avg, exp.P, exp)
    return Classification(Verdict.ZERO, Rule.PERIODIC_EXPONENT, avg, -exp.P, exp)


def gen_x_r(r: int, eta, bits: int | None = None) -> CFSpec:
    """Period of r^2 ones followed by r copies of the block digit
    m = floor(r (kappa_1 - 1 + eta)) + 1, the floor taken against the
    certified kappa_1 enclosure.  The limit average tends to kappa_1 + eta
    as r grows while the derivative collapses to zero."""
    eta = Fraction(eta)
    if r < 2:
        raise DomainError("r must be >= 2")
    if not 0 < eta < 1:
        raise DomainError("eta must lie in (0, 1)")
    bits = bits or default_bits()
    while True:
        target = (kappas(bits).kappa1 + (eta - 1)) * r
        lo, hi = floor(target.lo), floor(target.hi)
        if lo == hi:
            m = lo + 1
            break
        if bits >= MAX_BITS:
            raise PrecisionError("floor of r (kappa_1 - 1 + eta) undecided")
        bits = min(2 * bits, MAX_BITS)
    q = r * r
    return CFSpec(period=(1,) * q + (m,) * r)


def gen_x_pq(p: int, q: int, bits: int | None = None) -> CFSpec:
    """Period of p fours and q fives, accepted only when the average
    (4p+5q)/(p+q) sits certifiedly below kappa_2."""
    if p < 1 or q < 1:
        raise DomainError("p and q must be positive")
    avg = Fraction(4 * p + 5 * q, p + q)
    side, margin = _compare_average(avg, "kappa2", bits or default_bits())
    if side != "lt":
        raise OutOfWindowError(
            f"average {avg} is not below kappa_2 (excess {margin})"
        )
    return CFSpec(period=(4,) * p + (5,) * q)


def xpq_window(p: int, q: int, bits: int | None = None) -> Interval:
    """Achieved window kappa_2 - (4p+5q)/(p+q), certified positive."""
    avg = Fraction(4 * p + 5 * q, p + q)
    side, margin = _compare_average(avg, "kappa2", bits or default_bits())
    if side != "lt":
        raise OutOfWindowError(f"average {avg} is not below kappa_2")
    return margin


@dataclass(frozen=True)
class TrendRow:
    t: int
    lower_log: Interval
    upper_log: Interval


def trend_statistic(spec: CFSpec, depth: int) -> tuple:
    """Logs of the sandwich-driving quantities for t = 1..depth:

    lower_t = q_t q_{t-1} / 2^(a_1+...+a_{t+2}+1)
    upper_t = 16 (a_{t+1}+2)^2 q_t^2 / 2^(a_1+...+a_t)

    Over whole periods the shared factors cancel, so both log-slopes equal
    the periodic exponent; their sign matches the classification.
    """
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if depth > MAX_TREND_DEPTH:
        raise SizeError(f"depth capped at {MAX_TREND_DEPTH}")
    word = spec.quotient_prefix(depth + 2)
    bits = _TREND_BITS
    ln2 = ln2_enclosure(bits)
    small_logs = {}

    def log_of_int(v: int) -> Interval:
        if v not in small_logs:
            small_logs[v] = ln_enclosure(Fraction(v), bits)
        return small_logs[v]

    rows = []
    q_prev, q = 0, 1
    lnq_prev = None
    lnq = Interval.point(0)
    S = 0
    for t in range(1, depth + 1):
        a = word[t - 1]
        S += a
        q_prev, q = q, a * q + q_prev
        lnq_prev, lnq = lnq, ln_enclosure(Fraction(q), bits)
        sum_t2 = S + word[t] + word[t + 1]
        lower_log = lnq + lnq_prev - ln2 * (sum_t2 + 1)
        upper_log = lnq * 2 + log_of_int(word[t] + 2) * 2 + ln2 * (4 - S)
        rows.append(TrendRow(t=t, lower_log=lower_log, upper_log=upper_log))
    return tuple(rows)
