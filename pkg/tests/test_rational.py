from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmark.errors import DomainError, NotDyadicError, PreconditionError
from qmark.rational import (
    Dyadic,
    are_farey_neighbors,
    format_rational,
    mediant,
    parse_dyadic,
    parse_rational,
)


def test_mediant_examples():
    assert mediant(Fraction(0), Fraction(1)) == Fraction(1, 2)
    assert mediant(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert mediant(Fraction(2, 5), Fraction(1, 2)) == Fraction(3, 7)


def test_mediant_rejects_equal_inputs():
    with pytest.raises(PreconditionError):
        mediant(Fraction(1, 2), Fraction(1, 2))


fractions_01 = st.fractions(min_value=0, max_value=1)


@given(fractions_01, fractions_01)
def test_mediant_between(a, b):
    if a == b:
        return
    m = mediant(a, b)
    assert min(a, b) < m < max(a, b)


@given(st.integers(min_value=0, max_value=2**40), st.integers(min_value=1, max_value=2**40))
def test_farey_neighbor_mediant_preserves_determinant(steps, seed):
    # random Stern-Brocot descent: every (lo, hi) pair stays a neighbor pair
    lo, hi = Fraction(0), Fraction(1)
    for bit in bin(seed)[2:][:20]:
        m = mediant(lo, hi)
        assert are_farey_neighbors(lo, m) and are_farey_neighbors(m, hi)
        if bit == "1":
            lo = m
        else:
            hi = m
    assert are_farey_neighbors(lo, hi)


big_fractions = st.fractions()


@given(big_fractions, big_fractions)
def test_rational_arithmetic_exact(a, b):
    assert (a + b) - b == a


def test_dyadic_examples():
    d = Dyadic.from_fraction(Fraction(3, 8))
    assert (d.mantissa, d.exponent) == (3, 3)
    assert Dyadic.from_fraction(Fraction(1)) == Dyadic(1, 0)
    with pytest.raises(NotDyadicError):
        Dyadic.from_fraction(Fraction(1, 3))


def test_dyadic_normalization():
    assert Dyadic(4, 4) == Dyadic(1, 2)
    assert Dyadic(0, 7) == Dyadic(0, 0)
    assert Dyadic(3, 0).to_fraction() == 3


@given(st.integers(), st.integers(min_value=0, max_value=200))
def test_dyadic_round_trip(mantissa, exponent):
    d = Dyadic(mantissa, exponent)
    assert Dyadic.from_fraction(d.to_fraction()) == d
    assert d.exponent == 0 if d.mantissa == 0 else True
    if d.mantissa:
        assert d.mantissa % 2 == 1 or d.exponent == 0


def test_dyadic_strings():
    assert str(Dyadic(3, 3)) == "3/2^3"
    assert str(Dyadic(1, 0)) == "1"
    assert Dyadic(3, 3).binary() == "0.011"
    assert Dyadic(7, 4).binary() == "0.0111"
    assert Dyadic(1, 0).binary() == "1"
    assert Dyadic(-1, 2).binary() == "-0.01"


def test_parsing():
    assert parse_rational("2/5") == Fraction(2, 5)
    assert parse_rational("-3/7") == Fraction(-3, 7)
    assert parse_rational(" 4 ") == 4
    assert format_rational(Fraction(2, 5)) == "2/5"
    assert format_rational(Fraction(4)) == "4"
    assert parse_dyadic("3/2^3").to_fraction() == Fraction(3, 8)
    assert parse_dyadic("-1/2^12").to_fraction() == Fraction(-1, 4096)
    assert parse_dyadic("5/8").to_fraction() == Fraction(5, 8)
    with pytest.raises(DomainError):
        parse_rational("0.4")
    with pytest.raises(NotDyadicError):
        parse_dyadic("1/3")
