"""Extremal continuants over digit-count profiles and exhaustive base cases.

A profile (r_1,...,r_n) fixes how many partial quotients equal each digit;
W_n is every arrangement, V_n the arrangements starting with 1.  This
module brute-forces the extremal continuants mu_n, checks the sorted-word
closed form k[r_1,...,r_n], certifies the lambda-product upper bounds,
maximizes sum r_j L_j over the constrained simplex (vertex formula plus a
grid oracle), and re-runs the exhaustive {1,4} base-case scans with
data-parallel chunks that merge deterministically.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from .cf import continuant, constant_continuant
from .constants import default_bits, kappas, spectral
from .errors import DomainError, NoDecompositionError, PreconditionError, SizeError
from .interval import Interval, e_enclosure, pow_interval

MAX_BRUTE_T = 10
MAX_SQRT_N = 40
MAX_MAPLE_T = 26  # all continuants provably below 2^63 up to here
MAPLE_PREFIX_BITS = 8


@dataclass(frozen=True)
class Profile:
    r: tuple

    def __post_init__(self):
        r = tuple(int(v) for v in self.r)
        if any(v < 0 for v in r):
            raise DomainError("digit counts must be nonnegative")
        while r and r[-1] == 0:
            r = r[:-1]
        if not r:
            raise DomainError("profile must contain a positive count")
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def t(self) -> int:
        return sum(self.r)

    def multiset(self) -> tuple:
        out = []
        for digit, count in enumerate(self.r, start=1):
            out.extend([digit] * count)
        return tuple(out)

    @classmethod
    def parse(cls, text: str) -> "Profile":
        return cls(tuple(int(s) for s in text.replace(" ", "").split(",") if s))


def multiset_permutations(items) -> "iterator[tuple]":
    """Distinct permutations in lexicographic order (next-permutation walk)."""
    arr = sorted(items)
    size = len(arr)
    if size == 0:
        yield ()
        return
    while True:
        yield tuple(arr)
        i = size - 2
        while i >= 0 and arr[i] >= arr[i + 1]:
            i -= 1
        if i < 0:
            return
        j = size - 1
        while arr[j] <= arr[i]:
            j -= 1
        arr[i], arr[j] = arr[j], arr[i]
        arr[i + 1 :] = reversed(arr[i + 1 :])


def _guard_brute(profile: Profile):
    if profile.t > MAX_BRUTE_T:
        raise SizeError(f"profile weight {profile.t} exceeds brute-force guard")
    if profile.t < 1:
        raise DomainError("profile weight must be at least 1")


def mu_brute(profile: Profile) -> tuple:
    """Max continuant over all arrangements; lexicographically smallest
    maximizing word as witness."""
    _guard_brute(profile)
    best = -1
    witness = None
    for word in multiset_permutations(profile.multiset()):
        k_prev, k = 0, 1
        for a in word:
            k_prev, k = k, a * k + k_prev
        if k > best:
            best, witness = k, word
    return best, witness


def k_bracket(profile: Profile) -> int:
    """Continuant of the ascending-blocks word 1..1 2..2 ... n..n."""
    return continuant(profile.multiset())


@dataclass(frozen=True)
class KanReport:
    profile: Profile
    v_max: int
    v_witness: tuple
    bracket: int
    counterexample: tuple | None

    @property
    def equal(self) -> bool:
        return self.counterexample is None


def kan_check(profile: Profile) -> KanReport:
    """Max over arrangements with a_1 = 1 against the sorted closed form."""
    if not profile.r or profile.r[0] < 1:
        raise PreconditionError("profile must use digit 1 at least once")
    _guard_brute(profile)
    rest = profile.multiset()[1:]
    best = -1
    witness = None
    for tail in multiset_permutations(rest):
        k_prev, k = 1, 1  # continuant state after the leading 1
        for a in tail:
            k_prev, k = k, a * k + k_prev
        if k > best:
            best, witness = k, (1, *tail)
    bracket = k_bracket(profile)
    counter = None if best == bracket else witness
    return KanReport(
        profile=profile, v_max=best, v_witness=witness, bracket=bracket, counterexample=counter
    )


@lru_cache(maxsize=None)
def _lambda_power(j: int, exponent: int, bits: int) -> Interval:
    return pow_interval(spectral(j, bits).lam, exponent)


@dataclass(frozen=True)
class PrtReport:
    profile: Profile
    mu: int
    witness: tuple
    bound: Interval
    prod_lhs: int
    prod_rhs: Fraction

    @property
    def strict_ok(self) -> bool:
        """mu certainly below lambda_1 e prod lambda_j^{r_j}."""
        return self.mu < self.bound.lo

    @property
    def prod_ok(self) -> bool:
        """k[r] <= prod k_{r_j, j} * prod (1 + 1/(j(j+1))), exactly."""
        return self.prod_lhs <= self.prod_rhs


def prt_bound(profile: Profile, bits: int | None = None) -> PrtReport:
    bits = bits or default_bits()
    mu, witness = mu_brute(profile)
    bound = spectral(1, bits).lam * e_enclosure(bits)
    for j, count in enumerate(profile.r, start=1):
        if count:
            bound = bound * _lambda_power(j, count, bits)
    rhs = Fraction(1)
    for j, count in enumerate(profile.r, start=1):
        rhs *= constant_continuant(count, j)
    for j in range(1, profile.n):
        rhs *= 1 + Fraction(1, j * (j + 1))
    return PrtReport(
        profile=profile,
        mu=mu,
        witness=witness,
        bound=bound,
        prod_lhs=k_bracket(profile),
        prod_rhs=rhs,
    )


@dataclass(frozen=True)
class PolytopeVertex:
    kind: str  # "pure" or "mixed"
    i: int | None
    j: int
    weights: tuple  # ((digit, Interval), ...) summing to 1
    value: Interval

    def label(self) -> str:
        return f"e_{self.j}" if self.kind == "pure" else f"e_{self.i},{self.j}"


@dataclass(frozen=True)
class OmegaVertexReport:
    n: int
    eta: Fraction
    max_value: Interval
    argvertex: PolytopeVertex
    vertices: tuple


def omega_max_vertex(n: int, eta, bits: int | None = None) -> OmegaVertexReport:
    """Maximum of sum r_j L_j over the weight-1 slice of the constrained
    simplex {r >= 0, sum r_j = 1, sum (j - omega) r_j >= 0}, omega =
    kappa_2 + eta.  Vertices: e_j (j >= 5) and the two-digit mixtures
    e_{i,j} sitting on the constraint plane; the maximum encloses
    eta (L_5 - L_4)."""
    eta = Fraction(eta)
    if n < 5:
        raise DomainError("polytope needs n >= 5")
    if not 0 <= eta < Fraction(1, 2):
        raise DomainError("eta must lie in [0, 1/2)")
    bits = bits or default_bits()
    omega = kappas(bits).kappa2 + eta
    L = {j: spectral(j, bits).L for j in range(1, n + 1)}
    vertices = []
    for j in range(5, n + 1):
        vertices.append(
            PolytopeVertex(
                kind="pure", i=None, j=j, weights=((j, Interval.point(1)),), value=L[j]
            )
        )
    for i in range(1, 5):
        for j in range(5, n + 1):
            w_j = (omega - i) / (j - i)
            w_i = (j - omega) * Fraction(1, j - i)
            value = w_j * L[j] + w_i * L[i]
            vertices.append(
                PolytopeVertex(
                    kind="mixed", i=i, j=j, weights=((j, w_j), (i, w_i)), value=value
                )
            )
    max_lo = max(v.value.lo for v in vertices)
    max_hi = max(v.value.hi for v in vertices)
    arg = max(vertices, key=lambda v: v.value.hi)
    return OmegaVertexReport(
        n=n, eta=eta, max_value=Interval(max_lo, max_hi), argvertex=arg, vertices=tuple(vertices)
    )


@dataclass(frozen=True)
class OmegaGridReport:
    n: int
    t: int
    eta: Fraction
    grid_denominator: int
    feasible_count: int
    max_value: Interval | None
    argpoint: tuple | None
    exceeders: tuple

    @property
    def ok(self) -> bool:
        return not self.exceeders


def omega_max_grid(
    n: int, t: int, eta, grid_denominator: int, bits: int | None = None
) -> OmegaGridReport:
    """Brute-force oracle: sweep all r_j = m_j / D with sum r_j = t over
    certainly-feasible points and flag any whose value certainly exceeds
    the vertex maximum."""
    eta = Fraction(eta)
    if n > 8 or grid_denominator > 24:
        raise SizeError("grid oracle capped at n <= 8, D <= 24")
    if n < 1 or t < 1 or grid_denominator < 1:
        raise DomainError("n, t, D must be positive")
    bits = bits or default_bits()
    vertex_max = (
        omega_max_vertex(n, eta, bits).max_value if n >= 5 else None
    )
    omega_hi = (kappas(bits).kappa2 + eta).hi
    scale = 1 << bits
    L_lo = [0] * (n + 1)
    L_hi = [0] * (n + 1)
    for j in range(1, n + 1):
        iv = spectral(j, bits).L.outward(bits)
        L_lo[j] = int(iv.lo * scale)
        L_hi[j] = int(iv.hi * scale)
    total = grid_denominator * t
    # Feasibility sum j*m_j >= omega_hi * D * t, compared via integers.
    num, den = omega_hi.numerator, omega_hi.denominator
    feas_rhs = num * total

    best = None  # (hi_scaled, lo_scaled, point)
    exceeders = []
    feasible = 0
    counts = [0] * (n + 1)
    cap_hi = None if vertex_max is None else vertex_max.hi * grid_denominator

    def sweep(j: int, remaining: int, jsum: int, lo_acc: int, hi_acc: int):
        nonlocal best, feasible
        if j == n:
            counts[n] = remaining
            jsum += n * remaining
            if jsum * den < feas_rhs:
                return
            feasible += 1
            lo_acc += remaining * L_lo[n]
            hi_acc += remaining * L_hi[n]
            if best is None or hi_acc > best[0]:
                best = (hi_acc, lo_acc, tuple(counts[1:]))
            if cap_hi is not None and Fraction(lo_acc, scale) > cap_hi:
                exceeders.append(tuple(counts[1:]))
            return
        # prune: even putting everything on digit n cannot reach feasibility
        if (jsum + remaining * n) * den < feas_rhs:
            return
        for m in range(remaining + 1):
            counts[j] = m
            sweep(j + 1, remaining - m, jsum + j * m, lo_acc + m * L_lo[j], hi_acc + m * L_hi[j])
        counts[j] = 0

    sweep(1, total, 0, 0, 0)
    max_value = None
    argpoint = None
    if best is not None:
        hi_acc, lo_acc, argpoint = best
        max_value = Interval(
            Fraction(lo_acc, scale * grid_denominator), Fraction(hi_acc, scale * grid_denominator)
        )
    return OmegaGridReport(
        n=n,
        t=t,
        eta=eta,
        grid_denominator=grid_denominator,
        feasible_count=feasible,
        max_value=max_value,
        argpoint=argpoint,
        exceeders=tuple(exceeders),
    )


@dataclass(frozen=True)
class ReduceResult:
    word: tuple
    sum_class: int
    steps: tuple

    @property
    def leftover(self) -> int | None:
        mid = [a for a in self.word if a in (2, 3)]
        return mid[0] if mid else None


def reduce_2233(word) -> ReduceResult:
    """Drains pairs of 2s/3s via the sum-preserving transfers {2,3}->{1,4},
    {2,2}->{1,3}, {3,3}->{2,4}, always taking the transfer with the smaller
    continuant; the continuant never increases.  Stops when at most one
    digit in {2,3} remains and reports which sum class (n, n-2, n-3) the
    word represents once that leftover digit is dropped."""
    w = [int(a) for a in word]
    if any(a not in (1, 2, 3, 4) for a in w):
        raise DomainError("digits must lie in 1..4")
    steps = []
    while True:
        mids = [idx for idx, a in enumerate(w) if a in (2, 3)]
        if len(mids) < 2:
            break
        i, j = mids[0], mids[1]
        pair_sum = w[i] + w[j]
        low = max(1, pair_sum - 4)
        high = pair_sum - low
        before_k = continuant(w)
        option_a = list(w)
        option_a[i], option_a[j] = low, high
        option_b = list(w)
        option_b[i], option_b[j] = high, low
        ka, kb = continuant(option_a), continuant(option_b)
        w = option_a if ka <= kb else option_b
        after_k = min(ka, kb)
        if after_k > before_k:
            raise DomainError("replacement increased the continuant")  # unreachable
        steps.append(((i + 1, j + 1), after_k))
    total = sum(int(a) for a in word)
    leftover = next((a for a in w if a in (2, 3)), None)
    sum_class = total - (leftover or 0)
    return ReduceResult(word=tuple(w), sum_class=sum_class, steps=tuple(steps))


@lru_cache(maxsize=None)
def _sqrt_floor_table(t: int) -> np.ndarray:
    """table[S] = isqrt(2^S - 1): k violates k^2 < 2^S iff k <= table[S]."""
    table = np.zeros(4 * t + 1, dtype=np.int64)
    for S in range(t, 4 * t + 1):
        table[S] = isqrt((1 << S) - 1)
    return table


@lru_cache(maxsize=None)
def _suffix_bit_planes(s: int) -> tuple:
    idx = np.arange(1 << s, dtype=np.int64)
    return tuple(((idx >> (s - 1 - pos)) & 1) for pos in range(s))


def _word_from_index(idx: int, t: int) -> tuple:
    return tuple(1 + 3 * ((idx >> (t - 1 - pos)) & 1) for pos in range(t))


def _scan_chunk(args) -> np.ndarray:
    """Violating word indices within one fixed-prefix chunk, ascending."""
    t, prefix, prefix_bits = args
    s = t - prefix_bits
    k_prev, k = 0, 1
    digit_sum = 0
    for pos in range(prefix_bits):
        a = 1 + 3 * ((prefix >> (prefix_bits - 1 - pos)) & 1)
        k_prev, k = k, a * k + k_prev
        digit_sum += a
    size = 1 << s
    planes = _suffix_bit_planes(s)
    kp = np.full(size, k_prev, dtype=np.int64)
    kc = np.full(size, k, dtype=np.int64)
    S = np.full(size, digit_sum, dtype=np.int64)
    for pos in range(s):
        a = 1 + 3 * planes[pos]
        kn = a * kc + kp
        kp = kc
        kc = kn
        S += a
    table = _sqrt_floor_table(t)
    viol = np.nonzero(kc <= table[S])[0]
    return viol + (prefix << s)


@dataclass(frozen=True)
class MapleReport:
    t: int
    count_checked: int
    violations: tuple
    threads: int

    @property
    def diagnostic(self) -> bool:
        return self.t not in (23, 24)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_maple(t: int, threads: int | None = None) -> MapleReport:
    """Scans every word in {1,4}^t for k_t^2 < 2^(a_1+...+a_t).

    The space is split by fixed 8-bit prefixes; chunks are independent and
    merged in prefix order, so the violation list is lexicographic and
    bitwise identical at any thread count.  Comparisons stay exact: the
    squaring is replaced by k <= isqrt(2^S - 1), and int64 cannot overflow
    for t <= 26.
    """
    if not 1 <= t <= MAX_MAPLE_T:
        raise SizeError(f"t must lie in 1..{MAX_MAPLE_T}")
    threads = threads or os.cpu_count() or 1
    prefix_bits = min(MAPLE_PREFIX_BITS, t - 1) if t > 1 else 0
    prefixes = list(range(1 << prefix_bits))
    tasks = [(t, prefix, prefix_bits) for prefix in prefixes]
    if threads == 1 or len(prefixes) == 1:
        parts = [_scan_chunk(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_scan_chunk, tasks, chunksize=8))
    indices = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    words = tuple(_word_from_index(int(i), t) for i in indices)
    return MapleReport(t=t, count_checked=1 << t, violations=words, threads=threads)


@dataclass(frozen=True)
class SqrtReport:
    n: int
    min_continuant: int
    witness: tuple
    holds: bool


def verify_sqrt(n: int) -> SqrtReport:
    """Min continuant over {1,4}-words with digit sum n versus (sqrt 2)^n."""
    if not 1 <= n <= MAX_SQRT_N:
        raise SizeError(f"n must lie in 1..{MAX_SQRT_N}")
    best = None
    witness = None
    stack_word: list[int] = []

    def descend(remaining: int, k_prev: int, k: int):
        nonlocal best, witness
        if remaining == 0:
            if best is None or k < best:
                best, witness = k, tuple(stack_word)
            return
        if best is not None and k >= best:
            return  # continuants only grow along a branch
        for part in (1, 4):
            if part > remaining:
                continue
            stack_word.append(part)
            descend(remaining - part, k, part * k + k_prev)
            stack_word.pop()

    descend(n, 0, 1)
    holds = best * best >= (1 << n)
    return SqrtReport(n=n, min_continuant=best, witness=witness, holds=holds)


def sylvester_decompose(t: int) -> tuple:
    """t = 23x + 24y with x, y >= 0 and x maximal; fails exactly for the
    nonnegative integers outside the numerical semigroup (e.g. 505)."""
    if t < 0:
        raise NoDecompositionError(f"{t} is negative")
    x0 = (-t) % 24
    if 23 * x0 > t:
        raise NoDecompositionError(f"{t} has no decomposition 23x + 24y")
    x = x0 + 24 * ((t - 23 * x0) // (23 * 24))
    y = (t - 23 * x) // 24
    return x, y
