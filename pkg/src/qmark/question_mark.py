"""The Minkowski question mark function and its difference-quotient sandwich.

?(x) maps [0; a_1, a_2, ...] to the alternating dyadic series
1/2^(a_1-1) - 1/2^(a_1+a_2-1) + ...; on rationals the series is finite and
the value is an exact dyadic.  ?(x) is also the limit distribution of the
Stern-Brocot levels F_n, which gives an independent evaluation route
(tree descent plus midpoint averaging) used as an oracle.

``sandwich`` reproduces, on a deep convergent standing in for the
irrational, the construction that brackets (?(x+d) - ?(x))/d between
q_t q_{t-1} / 2^(a_1+...+a_{t+1}+z)   and
(z'+1)^2 q_{t'+1}^2 / 2^(a_1+...+a_{t'+1}+z'-4).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .cf import CFSpec, cf_expand, convergents
from .errors import (
    ConstructionError,
    DegenerateIntervalError,
    DomainError,
    GuardError,
    LimitError,
)
from .interval import Interval
from .rational import Dyadic, mediant

MAX_LEVEL = 24
_ORACLE_STEP_CAP = 1_000_000


def qm_rational(x: Fraction) -> Dyadic:
    """Exact ?(x) for rational x in [0, 1], via the alternating series."""
    if not 0 <= x <= 1:
        raise DomainError(f"{x} outside [0, 1]")
    if x == 0:
        return Dyadic(0)
    if x == 1:
        return Dyadic(1)
    total = Fraction(0)
    sign = 1
    exponent = 0
    for a in cf_expand(x):
        exponent += a
        total += Fraction(sign, 1 << (exponent - 1))
        sign = -sign
    return Dyadic.from_fraction(total)


def qm_mediant_oracle(x: Fraction) -> Dyadic:
    """Same value as ``qm_rational`` computed by Stern-Brocot descent:
    ?(mediant) is always the midpoint of the endpoint values."""
    if not 0 <= x <= 1:
        raise DomainError(f"{x} outside [0, 1]")
    if x == 0:
        return Dyadic(0)
    if x == 1:
        return Dyadic(1)
    lo, lo_val = Fraction(0), Fraction(0)
    hi, hi_val = Fraction(1), Fraction(1)
    for _ in range(_ORACLE_STEP_CAP):
        mid = mediant(lo, hi)
        mid_val = (lo_val + hi_val) / 2
        if mid == x:
            return Dyadic.from_fraction(mid_val)
        if x < mid:
            hi, hi_val = mid, mid_val
        else:
            lo, lo_val = mid, mid_val
    raise LimitError(f"mediant descent did not reach {x} within the step cap")


def qm_irrational(spec: CFSpec, eps: Fraction) -> Interval:
    """Interval of width <= eps containing ?(x) for x given by spec.

    Consecutive partial sums of the alternating series bracket the value;
    the bracket width is exactly the magnitude of the last term added.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    if spec.is_rational:
        exact = qm_rational(spec.value()).to_fraction()
        return Interval(exact, exact)
    prev = Fraction(0)
    cur = Fraction(0)
    sign = 1
    exponent = 0
    for a in spec.quotients():
        exponent += a
        term = Fraction(1, 1 << (exponent - 1))
        prev, cur = cur, cur + sign * term
        sign = -sign
        if term <= eps:
            break
    return Interval(min(prev, cur), max(prev, cur))


@dataclass(frozen=True)
class SternBrocotLevel:
    n: int
    points: tuple

    def __post_init__(self):
        assert len(self.points) == (1 << self.n) + 1


def stern_brocot_level(n: int) -> SternBrocotLevel:
    """Level F_n: 2^n + 1 points from 0/1 to 1/1, consecutive pairs are
    Farey neighbors; each level inserts the mediants of the previous one."""
    if n < 0:
        raise DomainError("level must be nonnegative")
    if n > MAX_LEVEL:
        raise LimitError(f"level {n} exceeds the memory guard ({MAX_LEVEL})")
    points = [Fraction(0), Fraction(1)]
    for _ in range(n):
        nxt = []
        for a, b in zip(points, points[1:]):
            nxt.append(a)
            nxt.append(mediant(a, b))
        nxt.append(points[-1])
        points = nxt
    return SternBrocotLevel(n=n, points=tuple(points))


@dataclass(frozen=True)
class DistributionReport:
    n: int
    points_checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def distribution_check(n: int) -> DistributionReport:
    """Verifies the exact identity ?(x_{j,n}) = j / 2^n across level n."""
    if n > 20:
        raise LimitError(f"distribution check capped at level 20, got {n}")
    level = stern_brocot_level(n)
    scale = 1 << n
    failures = []
    for j, x in enumerate(level.points):
        got = qm_rational(x).to_fraction()
        if got != Fraction(j, scale):
            failures.append((j, x, got))
    return DistributionReport(n=n, points_checked=len(level.points), failures=tuple(failures))


class FareySearch(NamedTuple):
    n: int
    left: Fraction
    xi: Fraction
    right: Fraction


def farey_interval_search(
    x: Fraction, delta: Fraction, max_steps: int = 1_000_000
) -> FareySearch:
    """Maximal n with F_n disjoint from (x, x+delta), the unique point xi
    of F_{n+1} inside, and the enclosing consecutive F_n points.

    Descends the Stern-Brocot tree; levels are never materialized.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise DegenerateIntervalError("interval must have positive width")
    lo_end, hi_end = Fraction(x), Fraction(x) + delta
    if not (0 < lo_end and hi_end < 1):
        raise DomainError(f"({lo_end}, {hi_end}) not inside (0, 1)")
    left, right = Fraction(0), Fraction(1)
    n = 0
    for _ in range(max_steps):
        mid = mediant(left, right)
        if lo_end < mid < hi_end:
            return FareySearch(n=n, left=left, xi=mid, right=right)
        if mid <= lo_end:
            left = mid
        else:
            right = mid
        n += 1
    raise DegenerateIntervalError(
        f"no mediant entered ({lo_end}, {hi_end}) within {max_steps} steps"
    )


@dataclass(frozen=True)
class SandwichReport:
    x: Fraction
    delta: Fraction
    n: int
    t: int
    z: int
    lower: Fraction
    quotient: Fraction
    upper: Fraction
    case: str
    t_upper: int
    z_upper: int

    def __post_init__(self):
        assert self.lower <= self.quotient <= self.upper


def sandwich(spec: CFSpec, approx_depth: int, delta) -> SandwichReport:
    """Difference-quotient bracket at the depth-``approx_depth`` convergent.

    The convergent x-hat impersonates the irrational; a guard refuses any
    configuration whose construction would probe the continued fraction
    beyond the prefix both numbers share.
    """
    d = delta.to_fraction() if isinstance(delta, Dyadic) else Fraction(delta)
    if d == 0:
        raise DomainError("delta must be nonzero")
    convs = convergents(spec, approx_depth)
    word = spec.quotient_prefix(approx_depth)
    xhat = convs[-1].value()
    far_end = xhat + d
    if not (0 < xhat < 1 and 0 < far_end < 1):
        raise DomainError("x and x+delta must both lie inside (0, 1)")

    lo_end, width = (xhat, d) if d > 0 else (far_end, -d)
    search = farey_interval_search(lo_end, width)
    anchor, far = (search.left, search.right) if d > 0 else (search.right, search.left)

    # p_t/q_t tables with p_0/q_0 = 0/1 and q_{-1} = 0.
    pq_of = {0: (0, 1), -1: (1, 0)}
    value_to_index = {Fraction(0): 0}
    for c in convs:
        pq_of[c.index] = (c.p, c.q)
        value_to_index[c.value()] = c.index
    t = value_to_index.get(anchor)
    if t is None or t + 2 > approx_depth:
        raise GuardError(
            "Farey search escaped the trusted prefix; increase approx_depth "
            "or use a larger delta"
        )
    a_next, a_next2 = word[t], word[t + 1]  # a_{t+1}, a_{t+2}
    sum_t = sum(word[:t])
    sum_t1 = sum_t + a_next

    xi = search.xi
    hi_end = lo_end + width
    x_region = (lo_end, xi) if d > 0 else (xi, hi_end)
    far_region = (xi, hi_end) if d > 0 else (lo_end, xi)
    z_cap = 2 + max(a_next, a_next2)
    z_found = None
    on_x_side = None
    hit = None
    for z in range(1, z_cap + 1):
        x_cand = Fraction(
            anchor.numerator + z * xi.numerator, anchor.denominator + z * xi.denominator
        )
        far_cand = Fraction(
            far.numerator + z * xi.numerator, far.denominator + z * xi.denominator
        )
        if x_region[0] < x_cand < x_region[1]:
            z_found, on_x_side, hit = z, True, x_cand
            break
        if far_region[0] < far_cand < far_region[1]:
            z_found, on_x_side, hit = z, False, far_cand
            break
    if z_found is None:
        raise GuardError(f"no mediant repetition hit within z <= {z_cap}")
    z = z_found

    # A fraction enters the levels at (sum of its quotients) - 1, so the
    # isolated point xi in F_{n+1} ties n to the quotient sums below.
    q_t, q_tm1 = pq_of[t][1], pq_of[t - 1][1]
    if on_x_side and z == 1:
        case = "i1"
        z_star, rem = divmod(hit.denominator - q_tm1, q_t)
        if rem or not 1 <= z_star <= a_next:
            raise ConstructionError(
                f"repetition point {hit} is not an intermediate fraction step"
            )
        if search.n + 3 != sum_t + z_star:
            raise ConstructionError("level count disagrees with quotient sums")
        t_upper, z_upper = t - 1, z_star
        upper_num = (z_star + 1) ** 2 * q_t**2
        upper_exp = sum_t + z_star - 4
    else:
        case = "i2" if on_x_side else "ii"
        p_t1, q_t1 = pq_of[t + 1]
        if xi != Fraction(p_t1, q_t1):
            raise ConstructionError("isolated point is not the next convergent")
        if search.n + 2 != sum_t1:
            raise ConstructionError("level count disagrees with quotient sums")
        if case == "i2" and z != a_next2 + 1:
            raise ConstructionError("repetition count differs from a_{t+2} + 1")
        if case == "ii" and z > a_next2:
            raise ConstructionError("repetition count exceeds a_{t+2}")
        t_upper, z_upper = t, z
        upper_num = (z + 1) ** 2 * q_t1**2
        upper_exp = sum_t1 + z - 4

    lower = Fraction(q_t * q_tm1, 1 << (sum_t1 + z))
    upper = (
        Fraction(upper_num, 1 << upper_exp) if upper_exp >= 0 else Fraction(upper_num << -upper_exp)
    )
    quotient = (qm_rational(far_end).to_fraction() - qm_rational(xhat).to_fraction()) / d
    if not lower <= quotient <= upper:
        raise ConstructionError(
            f"sandwich bounds failed: {lower} <= {quotient} <= {upper}"
        )
    return SandwichReport(
        x=xhat,
        delta=d,
        n=search.n,
        t=t,
        z=z,
        lower=lower,
        quotient=quotient,
        upper=upper,
        case=case,
        t_upper=t_upper,
        z_upper=z_upper,
    )
