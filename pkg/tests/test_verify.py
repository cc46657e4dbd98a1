from itertools import product

import pytest

from conftest import matrix_continuant
from qmark.errors import SizeError
from qmark.extremal import verify_maple, verify_sqrt


def brute_maple(t):
    """Pure-Python reference scan over {1,4}^t."""
    violations = []
    for word in product((1, 4), repeat=t):
        k = matrix_continuant(word)
        if k * k < 2 ** sum(word):
            violations.append(word)
    return tuple(violations)


def test_maple_diagnostic_t2():
    report = verify_maple(2)
    assert report.violations == ((1, 4), (4, 1))
    assert report.count_checked == 4
    assert report.diagnostic


def test_maple_matches_reference_scan():
    for t in (1, 3, 7, 9, 12):
        report = verify_maple(t)
        assert report.violations == brute_maple(t), t
        assert report.count_checked == 2**t


def test_maple_thread_count_invariance():
    t = 14
    baseline = verify_maple(t, threads=1)
    assert baseline.violations == brute_maple(t)
    for threads in (2, 4):
        again = verify_maple(t, threads=threads)
        assert again.violations == baseline.violations
        assert again.count_checked == baseline.count_checked


def test_maple_base_cases_are_clean():
    assert verify_maple(23, threads=1).violations == ()
    assert verify_maple(24, threads=1).violations == ()


def test_maple_guard():
    with pytest.raises(SizeError):
        verify_maple(27)
    with pytest.raises(SizeError):
        verify_maple(0)


def brute_sqrt(n):
    best, witness = None, None

    def rec(remaining, word):
        nonlocal best, witness
        if remaining == 0:
            k = matrix_continuant(word)
            if best is None or k < best:
                best, witness = k, word
            return
        for part in (1, 4):
            if part <= remaining:
                rec(remaining - part, word + (part,))

    rec(n, ())
    return best, witness


def test_sqrt_examples():
    report = verify_sqrt(5)
    assert report.min_continuant == 5
    assert report.witness == (1, 4)
    assert not report.holds  # 25 < 32
    assert verify_sqrt(8).holds


def test_sqrt_matches_reference():
    for n in (3, 6, 10, 14, 17):
        report = verify_sqrt(n)
        best, witness = brute_sqrt(n)
        assert report.min_continuant == best
        assert report.witness == witness
        assert report.holds == (best * best >= 2**n)


def test_sqrt_sum_version_fails_at_the_claimed_base():
    # the fixed-digit-sum variant is false at 23 and 24: short words built
    # from (1,4) blocks stay below the square-root-of-two growth line
    report = verify_sqrt(23)
    assert report.min_continuant == 2707
    assert report.witness == (1, 4, 1, 4, 4, 4, 4, 1)
    assert 2707**2 == 7327849 < 2**23
    assert not report.holds
    report = verify_sqrt(24)
    assert report.min_continuant == 3712
    assert not report.holds


def test_sqrt_guard():
    with pytest.raises(SizeError):
        verify_sqrt(41)
    with pytest.raises(SizeError):
        verify_sqrt(0)
