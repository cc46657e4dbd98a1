"""Certified enclosures of the growth constants lambda_j, L_j, c_{1,j},
c_{2,j} and the thresholds kappa_1, kappa_2, kappa_3.

lambda_j = (j + sqrt(j^2+4))/2 is the growth rate of constant-j
continuants; L_j = ln(lambda_j) - j ln2 / 2 compares that growth against
2^(sum of quotients)/2.  kappa_1 = 2 log2(lambda_1), kappa_2 =
(4L_5 - 5L_4)/(L_5 - L_4), and kappa_3 is the root of
2 log2(1+x) - x = 0 beyond x = 2.

All values are intervals with width <= 2^-bits; the default precision is
64 fractional bits (env QM_PRECISION_BITS overrides) and certified
comparisons refine on demand.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PrecisionError
from .interval import (
    Interval,
    ln2_enclosure,
    ln_enclosure,
    ln_interval,
    sqrt_int_enclosure,
)

_ENV_BITS = "QM_PRECISION_BITS"
MAX_BITS = 256


def default_bits() -> int:
    raw = os.environ.get(_ENV_BITS)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise PrecisionError(f"{_ENV_BITS} must be an integer, got {raw!r}")
        if value < 8:
            raise PrecisionError(f"{_ENV_BITS} too small: {value}")
        return value
    return 64


@dataclass(frozen=True)
class SpectralConstants:
    j: int
    lam: Interval
    L: Interval
    c1: Interval
    c2: Interval
    bits: int

    def __post_init__(self):
        j = self.j
        assert j < self.lam.lo and self.lam.hi < j + 1
        assert 1 in (self.c1 + self.c2)
        assert self.c1.lo > 1 - Fraction(j, j * j + 1) and self.c1.hi < 1
        assert self.c2.lo > 0 and self.c2.hi < Fraction(j, j * j + 1)
        cap = Fraction(1, 1 << self.bits)
        assert max(self.lam.width, self.L.width, self.c1.width, self.c2.width) <= cap


@dataclass(frozen=True)
class Kappa:
    kappa1: Interval
    kappa2: Interval
    kappa3: Interval
    bits: int

    def __post_init__(self):
        assert Fraction("1.388") < self.kappa1.lo and self.kappa1.hi < Fraction("1.389")
        assert Fraction("4.401") < self.kappa2.lo and self.kappa2.hi < Fraction("4.402")
        assert Fraction("5.319") < self.kappa3.lo and self.kappa3.hi < Fraction("5.320")
        cap = Fraction(1, 1 << self.bits)
        assert max(self.kappa1.width, self.kappa2.width, self.kappa3.width) <= cap


@lru_cache(maxsize=None)
def _spectral(j: int, bits: int) -> SpectralConstants:
    work = bits + 16
    root = sqrt_int_enclosure(j * j + 4, work)
    lam = (root + j) * Fraction(1, 2)
    L = ln_interval(lam, work) - ln2_enclosure(work) * Fraction(j, 2)
    # Solving c1 + c2 = 1, c1*lam - c2/lam = j over Q(sqrt(j^2+4))
    # collapses to c1 = lam/sqrt(j^2+4), c2 = 1/(lam*sqrt(j^2+4)).
    c1 = lam / root
    c2 = 1 / (lam * root)
    return SpectralConstants(
        j=j,
        lam=lam.outward(bits + 2),
        L=L.outward(bits + 2),
        c1=c1.outward(bits + 2),
        c2=c2.outward(bits + 2),
        bits=bits,
    )


def spectral(j: int, bits: int | None = None) -> SpectralConstants:
    if j < 1:
        raise PrecisionError(f"j must be >= 1, got {j}")
    return _spectral(j, bits or default_bits())


def kappa3_equation(x: Fraction, bits: int) -> Interval:
    """Encloses 2 ln(1+x) - x ln 2; same sign as 2 log2(1+x) - x."""
    return ln_enclosure(1 + x, bits) * 2 - ln2_enclosure(bits) * x


@lru_cache(maxsize=None)
def _kappas(bits: int) -> Kappa:
    work = bits + 16
    ln2 = ln2_enclosure(work)
    k1 = ln_interval(spectral(1, work).lam, work) * 2 / ln2
    L4 = spectral(4, work).L
    L5 = spectral(5, work).L
    k2 = (L5 * 4 - L4 * 5) / (L5 - L4)
    k3 = _kappa3_bisect(bits)
    return Kappa(
        kappa1=k1.outward(bits + 2),
        kappa2=k2.outward(bits + 2),
        kappa3=k3,
        bits=bits,
    )


def _kappa3_bisect(bits: int) -> Interval:
    lo, hi = Fraction(5), Fraction(6)
    eval_bits = bits + 8
    target = Fraction(1, 1 << (bits + 2))
    assert kappa3_equation(lo, eval_bits).is_positive()
    assert kappa3_equation(hi, eval_bits).is_negative()
    while hi - lo > target:
        mid = (lo + hi) / 2
        value = kappa3_equation(mid, eval_bits)
        if value.is_positive():
            lo = mid
        elif value.is_negative():
            hi = mid
        else:
            eval_bits *= 2
            if eval_bits > 8 * MAX_BITS:
                raise PrecisionError("kappa3 bisection cannot certify a sign")
    return Interval(lo, hi)


def kappas(bits: int | None = None) -> Kappa:
    return _kappas(bits or default_bits())


@dataclass(frozen=True)
class Comparison:
    label: str
    margin: Interval

    @property
    def certified(self) -> bool:
        return self.margin.is_positive()


@dataclass(frozen=True)
class OrderingReport:
    comparisons: tuple
    bits: int

    @property
    def all_certified(self) -> bool:
        return all(c.certified for c in self.comparisons)


def check_orderings(bits: int | None = None, max_j: int = 12) -> OrderingReport:
    """Certifies L_2 > L_3 > L_1 > L_4 > 0 > L_5 > ... > L_max_j and
    L_5/(L_5 - L_4) >= 1/2, refining precision before giving up."""
    bits = bits or default_bits()
    for attempt_bits in (bits, 128, 2 * MAX_BITS):
        if attempt_bits < bits:
            continue
        report = _orderings_at(attempt_bits, max_j)
        if report.all_certified:
            return report
    failed = [c.label for c in report.comparisons if not c.certified]
    raise PrecisionError(f"orderings not certified at {attempt_bits} bits: {failed}")


def _orderings_at(bits: int, max_j: int) -> OrderingReport:
    L = {j: spectral(j, bits).L for j in range(1, max_j + 1)}
    comparisons = [
        Comparison("L2 > L3", L[2] - L[3]),
        Comparison("L3 > L1", L[3] - L[1]),
        Comparison("L1 > L4", L[1] - L[4]),
        Comparison("L4 > 0", L[4]),
        Comparison("0 > L5", -L[5]),
    ]
    for j in range(5, max_j):
        comparisons.append(Comparison(f"L{j} > L{j + 1}", L[j] - L[j + 1]))
    ratio = L[5] / (L[5] - L[4])
    comparisons.append(Comparison("L5/(L5-L4) >= 1/2", ratio - Fraction(1, 2)))
    return OrderingReport(comparisons=tuple(comparisons), bits=bits)


def refine_until(predicate, start_bits: int | None = None, limit: int = MAX_BITS):
    """Run predicate(bits) at doubling precision until it returns non-None."""
    bits = start_bits or default_bits()
    while True:
        result = predicate(bits)
        if result is not None:
            return result
        if bits >= limit:
            raise PrecisionError(f"undecided after refining to {bits} bits")
        bits = min(2 * bits, limit)
