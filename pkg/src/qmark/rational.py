"""Exact rational and dyadic arithmetic, mediants, and text formats.

Rationals are ``fractions.Fraction`` throughout (always stored reduced,
arbitrary precision).  ``Dyadic`` wraps values of the form m/2^k, the
exact range of the question mark function on rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NotDyadicError, PreconditionError

Rational = Fraction


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """Mediant (a.num + b.num) / (a.den + b.den); strictly between a and b."""
    if a == b:
        raise PreconditionError("mediant requires two distinct fractions")
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def farey_determinant(a: Fraction, b: Fraction) -> int:
    return a.numerator * b.denominator - b.numerator * a.denominator


def are_farey_neighbors(a: Fraction, b: Fraction) -> bool:
    """True when |ad - bc| = 1, i.e. a and b are adjacent in some level."""
    return abs(farey_determinant(a, b)) == 1


_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise DomainError(f"not a fraction: {text!r} (expected 'p/q' or integer)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DomainError("zero denominator")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Dyadic:
    """Exact value mantissa / 2^exponent, stored in lowest terms.

    Invariants: exponent >= 0; mantissa odd or zero; exponent == 0 when
    mantissa == 0.
    """

    mantissa: int
    exponent: int = 0

    def __post_init__(self):
        m, e = self.mantissa, self.exponent
        if e < 0:
            m <<= -e
            e = 0
        if m == 0:
            e = 0
        else:
            while e > 0 and m % 2 == 0:
                m //= 2
                e -= 1
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_fraction(cls, x: Fraction) -> "Dyadic":
        den = x.denominator
        if den & (den - 1):
            raise NotDyadicError(f"{x} has a non-power-of-two denominator")
        return cls(x.numerator, den.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.mantissa)
        return f"{self.mantissa}/2^{self.exponent}"

    def binary(self) -> str:
        """Exact binary expansion, e.g. 3/8 -> '0.011'."""
        m, e = self.mantissa, self.exponent
        sign = "-" if m < 0 else ""
        m = abs(m)
        whole, frac = divmod(m, 1 << e)
        if e == 0:
            return f"{sign}{whole:b}"
        return f"{sign}{whole:b}.{frac:0{e}b}"


_DYADIC_RE = re.compile(r"^([+-]?\d+)/2\^(\d+)$")


def parse_dyadic(text: str) -> Dyadic:
    """Accepts 'm/2^k', 'p/q' with q a power of two, or a plain integer."""
    text = text.strip()
    m = _DYADIC_RE.match(text)
    if m:
        return Dyadic(int(m.group(1)), int(m.group(2)))
    return Dyadic.from_fraction(parse_rational(text))
