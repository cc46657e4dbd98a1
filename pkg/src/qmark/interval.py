"""Rational interval arithmetic and certified enclosures of sqrt/ln/e.

Every enclosure returns an ``Interval`` with dyadic endpoints whose width
is at most 2^-bits.  Square roots come from ``math.isqrt`` on scaled
integers; logarithms from the argument-reduced series
2*atanh(z) = 2*(z + z^3/3 + z^5/5 + ...) with z = (m-1)/(m+1), m in [1,2),
which keeps z <= 1/3 and gives a geometric tail bound.  All intermediate
arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import DomainError


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        other = Fraction(other)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        return self + (-other if isinstance(other, Interval) else Interval.point(-Fraction(other)))

    def __rsub__(self, other) -> "Interval":
        return (-self) + other

    def __mul__(self, other) -> "Interval":
        if isinstance(other, Interval):
            products = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return Interval(min(products), max(products))
        other = Fraction(other)
        if other >= 0:
            return Interval(self.lo * other, self.hi * other)
        return Interval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        if isinstance(other, Interval):
            if other.lo <= 0 <= other.hi:
                raise DomainError("division by interval containing zero")
            inv = Interval(1 / other.hi, 1 / other.lo)
            return self * inv
        other = Fraction(other)
        if other == 0:
            raise DomainError("division by zero")
        return self * (Fraction(1) / other)

    def __rtruediv__(self, other) -> "Interval":
        return Interval.point(Fraction(other)) / self

    def is_positive(self) -> bool:
        """Certainly > 0."""
        return self.lo > 0

    def is_negative(self) -> bool:
        """Certainly < 0."""
        return self.hi < 0

    def certainly_lt(self, other) -> bool:
        hi = self.hi
        lo = other.lo if isinstance(other, Interval) else Fraction(other)
        return hi < lo

    def certainly_gt(self, other) -> bool:
        lo = self.lo
        hi = other.hi if isinstance(other, Interval) else Fraction(other)
        return lo > hi

    def encloses(self, other) -> bool:
        if isinstance(other, Interval):
            return self.lo <= other.lo and other.hi <= self.hi
        return Fraction(other) in self

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def outward(self, bits: int) -> "Interval":
        """Round endpoints outward to dyadics with 2^bits denominators."""
        scale = 1 << bits
        lo = Fraction(_floor_scaled(self.lo, scale), scale)
        hi = Fraction(_ceil_scaled(self.hi, scale), scale)
        return Interval(lo, hi)

    def __str__(self) -> str:
        return f"[{decimal_str(self.lo, 12)}, {decimal_str(self.hi, 12)}]"


def _floor_scaled(x: Fraction, scale: int) -> int:
    return (x.numerator * scale) // x.denominator


def _ceil_scaled(x: Fraction, scale: int) -> int:
    n = x.numerator * scale
    d = x.denominator
    return -((-n) // d)


def decimal_str(x: Fraction, digits: int) -> str:
    """Decimal rendering of an exact fraction, truncated toward zero."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole, rem = divmod(x.numerator, x.denominator)
    frac = rem * 10**digits // x.denominator
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def sqrt_int_enclosure(n: int, bits: int) -> Interval:
    """Encloses sqrt(n) for a nonnegative integer n; width <= 2^-bits."""
    if n < 0:
        raise DomainError("sqrt of negative integer")
    s = isqrt(n << (2 * bits))
    scale = 1 << bits
    return Interval(Fraction(s, scale), Fraction(s + 1, scale))


def sqrt_enclosure(x: Fraction, bits: int) -> Interval:
    """Encloses sqrt(x) for a nonnegative rational x."""
    if x < 0:
        raise DomainError("sqrt of negative rational")
    # sqrt(p/q) = sqrt(pq)/q
    inner = sqrt_int_enclosure(x.numerator * x.denominator, bits)
    return Interval(inner.lo / x.denominator, inner.hi / x.denominator)


def _atanh_twice(z: Fraction, bits: int) -> Interval:
    """Encloses 2*atanh(z) = ln((1+z)/(1-z)) for 0 <= z <= 1/3."""
    if z == 0:
        return Interval.point(0)
    target = Fraction(1, 1 << (bits + 2))
    z2 = z * z
    one_minus = 1 - z2
    power = z
    total = Fraction(0)
    i = 0
    while True:
        total += power / (2 * i + 1)
        i += 1
        power *= z2
        tail = power / ((2 * i + 1) * one_minus)
        if tail <= target:
            break
    return Interval(2 * total, 2 * (total + tail))


@lru_cache(maxsize=None)
def ln2_enclosure(bits: int) -> Interval:
    """ln 2 = 2*atanh(1/3)."""
    return _atanh_twice(Fraction(1, 3), bits + 4).outward(bits + 2)


def _mantissa_exponent(x: Fraction, prec: int) -> tuple[int, int]:
    """m, e with m*2^e <= x < (m+1)*2^e and m of about prec bits."""
    e = x.numerator.bit_length() - x.denominator.bit_length() - prec
    if e >= 0:
        m = x.numerator // (x.denominator << e)
    else:
        m = (x.numerator << -e) // x.denominator
    return m, e


def ln_enclosure(x: Fraction, bits: int) -> Interval:
    """Encloses ln(x) for rational x > 0; width <= 2^-bits."""
    if x <= 0:
        raise DomainError("ln of non-positive rational")
    if x == 1:
        return Interval.point(0)
    prec = bits + 4
    if x.numerator.bit_length() + x.denominator.bit_length() > 2 * prec + 64:
        # Big operand: ln(x) = ln(m) + e ln 2 with m*2^e <= x < (m+1)*2^e
        # and m a prec-bit integer, so the series only ever sees small
        # arguments.
        m, e = _mantissa_exponent(x, prec)
        core = Interval(
            ln_enclosure(Fraction(m), bits + 2).lo,
            ln_enclosure(Fraction(m + 1), bits + 2).hi,
        )
        ln2 = ln2_enclosure(bits + 4 + abs(e).bit_length())
        return (core + ln2 * e).outward(bits + 2)
    # Reduce to x = m * 2^k with m in [1, 2).
    k = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** k
    if m < 1:
        k -= 1
        m *= 2
    elif m >= 2:
        k += 1
        m /= 2
    z = (m - 1) / (m + 1)
    core = _atanh_twice(z, bits + 4)
    if k == 0:
        return core.outward(bits + 2)
    ln2 = ln2_enclosure(bits + 4 + abs(k).bit_length())
    return (core + ln2 * k).outward(bits + 2)


def ln_interval(iv: Interval, bits: int) -> Interval:
    """Monotone image of an interval under ln."""
    return Interval(ln_enclosure(iv.lo, bits).lo, ln_enclosure(iv.hi, bits).hi)


@lru_cache(maxsize=None)
def e_enclosure(bits: int) -> Interval:
    """Euler's number from its factorial series with explicit tail bound."""
    target = Fraction(1, 1 << (bits + 2))
    total = Fraction(2)
    term = Fraction(1)
    k = 1
    while True:
        k += 1
        term /= k
        total += term
        # sum_{j>k} 1/j! < (1/k!) * (k+2)/(k+1)^2
        tail = term * Fraction(k + 2, (k + 1) ** 2)
        if tail <= target:
            break
    return Interval(total, total + tail).outward(bits + 2)


def pow_interval(iv: Interval, exponent: int) -> Interval:
    """iv^exponent for a certainly-positive interval and exponent >= 0."""
    if exponent < 0:
        raise DomainError("negative exponent not supported")
    if not iv.is_positive():
        raise DomainError("pow_interval requires a certainly positive interval")
    return Interval(iv.lo**exponent, iv.hi**exponent)
