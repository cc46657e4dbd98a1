from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from qmark.cf import continuant
from qmark.constants import spectral
from qmark.errors import (
    DomainError,
    NoDecompositionError,
    PreconditionError,
    SizeError,
)
from qmark.extremal import (
    Profile,
    k_bracket,
    kan_check,
    mu_brute,
    multiset_permutations,
    omega_max_grid,
    omega_max_vertex,
    prt_bound,
    reduce_2233,
    sylvester_decompose,
)


def test_profile_normalization():
    p = Profile((2, 1, 0, 0))
    assert p.r == (2, 1) and p.n == 2 and p.t == 3
    assert p.multiset() == (1, 1, 2)
    assert Profile.parse("0,0,0,0,2").multiset() == (5, 5)
    with pytest.raises(DomainError):
        Profile((0, 0))
    with pytest.raises(DomainError):
        Profile((-1, 2))


def test_multiset_permutations_lexicographic():
    perms = list(multiset_permutations((2, 1, 1)))
    assert perms == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert list(multiset_permutations(())) == [()]


def test_mu_brute_examples():
    assert mu_brute(Profile((2, 1))) == (5, (1, 1, 2))
    assert mu_brute(Profile((1,))) == (1, (1,))
    assert mu_brute(Profile((0, 3))) == (12, (2, 2, 2))
    with pytest.raises(SizeError):
        mu_brute(Profile((11,)))


def test_k_bracket_examples():
    assert k_bracket(Profile((2, 1))) == 5
    assert k_bracket(Profile((1,))) == 1
    assert k_bracket(Profile((0, 0, 0, 0, 2))) == 26


def test_kan_examples():
    assert kan_check(Profile((2, 1))).equal
    report = kan_check(Profile((1, 1)))
    assert report.v_max == 3 and report.bracket == 3
    assert kan_check(Profile((3,))).v_max == 3
    with pytest.raises(PreconditionError):
        kan_check(Profile((0, 2)))


def test_kan_exhaustive_small():
    # every profile with r_1 >= 1, t <= 7, n <= 4
    for n in range(1, 5):
        for counts in product(range(8), repeat=n):
            if counts[0] < 1 or not 1 <= sum(counts) <= 7:
                continue
            report = kan_check(Profile(counts))
            assert report.equal, counts


def test_mu_at_least_bracket():
    for n in range(1, 5):
        for counts in product(range(6), repeat=n):
            if not 1 <= sum(counts) <= 6:
                continue
            profile = Profile(counts)
            value, witness = mu_brute(profile)
            assert value >= k_bracket(profile)
            assert continuant(witness) == value
            if counts[0] >= 1 and witness[0] == 1:
                assert value == k_bracket(profile)


def test_prt_examples():
    report = prt_bound(Profile((2, 1)))
    assert report.mu == 5
    assert report.strict_ok and report.prod_ok
    assert Fraction("27.79") < report.bound.lo < Fraction("27.80")
    report = prt_bound(Profile((1,)))
    assert report.mu == 1 and report.strict_ok
    assert Fraction("7.11") < report.bound.lo < Fraction("7.12")
    report = prt_bound(Profile((0, 0, 0, 4)))
    assert report.mu == 305 and report.strict_ok
    assert Fraction("1416.2") < report.bound.lo < Fraction("1416.3")


def test_omega_vertex_at_eta_zero():
    for n in (5, 8):
        report = omega_max_vertex(n, 0)
        assert Fraction(0) in report.max_value
        assert report.max_value.width <= Fraction(1, 2**40)
        assert report.argvertex.label() == "e_4,5"
        weights = dict(report.argvertex.weights)
        assert Fraction(1) in (weights[4] + weights[5])


def test_omega_vertex_matches_closed_form():
    L4, L5 = spectral(4).L, spectral(5).L
    for n, eta in ((5, 0), (6, Fraction(1, 10)), (8, Fraction(1, 4))):
        report = omega_max_vertex(n, eta)
        target = (L5 - L4) * eta
        assert report.max_value.intersects(target)
        assert report.max_value.width <= Fraction(1, 2**40)


def test_omega_vertex_domain():
    with pytest.raises(DomainError):
        omega_max_vertex(4, 0)
    with pytest.raises(DomainError):
        omega_max_vertex(6, Fraction(1, 2))


def test_omega_grid_oracle():
    vertex = omega_max_vertex(5, 0)
    grid = omega_max_grid(5, 1, 0, 10)
    assert grid.ok
    assert grid.feasible_count > 0
    assert grid.max_value.lo <= vertex.max_value.hi
    # the all-digit-1 point is infeasible since omega > 1
    assert all(point != (10, 0, 0, 0, 0) for point in [grid.argpoint])
    with pytest.raises(SizeError):
        omega_max_grid(9, 1, 0, 10)
    with pytest.raises(SizeError):
        omega_max_grid(5, 1, 0, 25)


def test_omega_grid_scaling_in_t():
    one = omega_max_grid(5, 1, Fraction(1, 10), 6)
    three = omega_max_grid(5, 3, Fraction(1, 10), 6)
    assert three.ok
    # value scale is linear in t for the best point
    assert three.max_value.lo == pytest.approx(float(one.max_value.lo * 3), abs=1e-9)


def test_reduce_2233_examples():
    result = reduce_2233((2, 3))
    assert result.word == (1, 4) and result.sum_class == 5
    assert reduce_2233((1, 4, 1)).word == (1, 4, 1)
    result = reduce_2233((2, 2))
    assert sorted(result.word) == [1, 3] and result.sum_class == 4
    result = reduce_2233((3, 3))
    assert sorted(result.word) == [2, 4] and result.sum_class == 6 - 2


def test_reduce_2233_sum_classes():
    # leftover 2 -> class n-2, leftover 3 -> class n-3, none -> class n
    result = reduce_2233((2, 2, 2))
    assert result.leftover == 2 and result.sum_class == 6 - 2
    result = reduce_2233((3, 3, 3))
    assert result.leftover == 3 and result.sum_class == 9 - 3
    result = reduce_2233((2, 3, 2, 3))
    assert result.leftover is None and result.sum_class == 10


@given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=10))
@settings(max_examples=300)
def test_reduce_2233_contract(word):
    word = tuple(word)
    result = reduce_2233(word)
    assert continuant(result.word) <= continuant(word)
    assert sum(result.word) == sum(word)
    assert sum(1 for a in result.word if a in (2, 3)) <= 1
    assert all(a in (1, 2, 3, 4) for a in result.word)
    expected_class = sum(word) - (result.leftover or 0)
    assert result.sum_class == expected_class


def test_reduce_2233_rejects_large_digits():
    with pytest.raises(DomainError):
        reduce_2233((2, 5))


def test_sylvester_examples():
    assert sylvester_decompose(506) == (22, 0)
    assert sylvester_decompose(529) == (23, 0)
    with pytest.raises(NoDecompositionError):
        sylvester_decompose(505)
    with pytest.raises(NoDecompositionError):
        sylvester_decompose(-1)


def test_sylvester_range_and_maximality():
    for t in range(0, 506):
        try:
            x, y = sylvester_decompose(t)
            assert 23 * x + 24 * y == t and x >= 0 and y >= 0
        except NoDecompositionError:
            # brute-force confirm no decomposition exists
            assert all(
                (t - 23 * x) % 24 != 0 or t - 23 * x < 0 for x in range(t // 23 + 1)
            ), t
    for t in (506, 552, 1000, 2000):
        x, y = sylvester_decompose(t)
        assert 23 * x + 24 * y == t
        assert 23 * (x + 24) > t  # x maximal within its residue class
