"""Continued fractions: expansion, continuants, convergents, splitting.

Words of partial quotients are plain tuples of positive integers.
``CFSpec`` describes a value in (0, 1) as preperiod plus optional period;
an empty period means the value is rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterable, Iterator

from .errors import DepthError, DomainError, PreconditionError

CFWord = tuple


def _check_word(word: Iterable[int]) -> tuple:
    w = tuple(word)
    for a in w:
        if not isinstance(a, int) or a < 1:
            raise DomainError(f"partial quotients must be positive integers, got {a!r}")
    return w


def cf_expand(x: Fraction) -> tuple:
    """Regular continued fraction of x in (0,1); final quotient >= 2."""
    if not 0 < x < 1:
        raise DomainError(f"{x} outside (0, 1)")
    p, q = x.numerator, x.denominator
    word = []
    while p:
        a, r = divmod(q, p)
        word.append(a)
        q, p = p, r
    return tuple(word)


def continuant(word: Iterable[int]) -> int:
    """k_t(a_1,...,a_t); k of the empty word is 1."""
    k_prev, k = 0, 1
    for a in word:
        k_prev, k = k, a * k + k_prev
    return k


def split_continuant(a: Iterable[int], b: Iterable[int]) -> int:
    """k(a)k(b) + k(a minus last)k(b minus first); equals k(a + b)."""
    a = tuple(a)
    b = tuple(b)
    return continuant(a) * continuant(b) + continuant(a[:-1]) * continuant(b[1:])


def constant_continuant(length: int, j: int) -> int:
    """k of the constant word (j, ..., j) of the given length."""
    if length < 0:
        raise DomainError("negative length")
    if j < 1:
        raise DomainError("quotient must be >= 1")
    k_prev, k = 0, 1
    for _ in range(length):
        k_prev, k = k, j * k + k_prev
    return k


def replacement_floor(word: Iterable[int], i: int, j: int) -> int:
    """min continuant after moving one unit between positions i and j.

    Positions are 1-based; both entries must exceed 1 so that each of the
    two transfers (a_i-1, a_j+1) and (a_i+1, a_j-1) stays a valid word.
    The result never exceeds the continuant of the original word.
    """
    w = _check_word(word)
    t = len(w)
    if not (1 <= i <= t and 1 <= j <= t) or i == j:
        raise PreconditionError(f"positions {i}, {j} invalid for word of length {t}")
    if w[i - 1] <= 1 or w[j - 1] <= 1:
        raise PreconditionError("both entries must be > 1")
    down_up = list(w)
    down_up[i - 1] -= 1
    down_up[j - 1] += 1
    up_down = list(w)
    up_down[i - 1] += 1
    up_down[j - 1] -= 1
    return min(continuant(down_up), continuant(up_down))


@dataclass(frozen=True)
class ConvergentPair:
    p: int
    q: int
    index: int

    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class CFSpec:
    """[0; preperiod, (period repeated forever)]; empty period = rational."""

    preperiod: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "preperiod", _check_word(self.preperiod))
        object.__setattr__(self, "period", _check_word(self.period))
        if not self.preperiod and not self.period:
            raise DomainError("empty continued fraction")
        if self.preperiod == (1,) and not self.period:
            raise DomainError("[0; 1] equals 1, outside (0, 1)")

    @property
    def is_rational(self) -> bool:
        return not self.period

    def quotients(self) -> Iterator[int]:
        """Partial quotients a_1, a_2, ...; infinite when periodic."""
        yield from self.preperiod
        while self.period:
            yield from self.period

    def quotient_prefix(self, depth: int) -> tuple:
        prefix = tuple(islice(self.quotients(), depth))
        if len(prefix) < depth:
            raise DepthError(
                f"only {len(prefix)} quotients available, {depth} requested"
            )
        return prefix

    def value(self) -> Fraction:
        """Exact value; defined only for rational (empty-period) specs."""
        if not self.is_rational:
            raise DomainError("periodic continued fraction has irrational value")
        p, p_prev = 0, 1
        q, q_prev = 1, 0
        for a in self.preperiod:
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
        return Fraction(p, q)

    def __str__(self) -> str:
        return format_cf(self)


def convergents(spec: CFSpec, depth: int) -> tuple:
    """Convergent pairs p_t/q_t for t = 1..depth."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    word = spec.quotient_prefix(depth)
    out = []
    p, p_prev = 0, 1
    q, q_prev = 1, 0
    for t, a in enumerate(word, start=1):
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(ConvergentPair(p, q, t))
    return tuple(out)


_CF_RE = re.compile(r"^\[\s*0\s*;(.*)\]$", re.S)


def parse_cf(text: str) -> CFSpec:
    """Parse '[0; a1, a2, (p1, p2, ...)]'; parenthesized tail is the period."""
    m = _CF_RE.match(text.strip())
    if not m:
        raise DomainError(f"not a continued fraction: {text!r}")
    body = m.group(1).strip()
    period: tuple = ()
    paren = re.search(r"\(([^()]*)\)\s*$", body)
    if paren:
        period = _parse_int_list(paren.group(1))
        if not period:
            raise DomainError("empty period group")
        body = body[: paren.start()].rstrip().rstrip(",")
    preperiod = _parse_int_list(body)
    return CFSpec(preperiod=preperiod, period=period)


def _parse_int_list(body: str) -> tuple:
    body = body.strip()
    if not body:
        return ()
    items = [s.strip() for s in body.split(",")]
    try:
        return tuple(int(s) for s in items if s)
    except ValueError as exc:
        raise DomainError(f"bad quotient in {body!r}") from exc


def format_cf(spec: CFSpec) -> str:
    parts = [str(a) for a in spec.preperiod]
    if spec.period:
        parts.append("(" + ", ".join(str(a) for a in spec.period) + ")")
    return "[0; " + ", ".join(parts) + "]"


def rational_to_spec(x: Fraction) -> CFSpec:
    return CFSpec(preperiod=cf_expand(x), period=())
