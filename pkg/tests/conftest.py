"""Shared brute-force oracles kept deliberately independent of the package
internals: matrix-product continuants, materialized Farey levels, and a
Euclidean continued-fraction expansion."""

from fractions import Fraction


def matrix_continuant(word):
    """Continuant via the 2x2 matrix product [[a,1],[1,0]]...; the (0,0)
    entry equals k_t."""
    a11, a12, a21, a22 = 1, 0, 0, 1
    for a in word:
        a11, a12 = a11 * a + a12, a11
        a21, a22 = a21 * a + a22, a21
    return a11


def euclid_cf(x: Fraction):
    """Quotients of 1/x via repeated floor-and-invert."""
    word = []
    while x:
        inv = 1 / x
        a = inv.numerator // inv.denominator
        word.append(a)
        x = inv - a
    return tuple(word)


def materialized_levels(n_max: int):
    """F_0 .. F_{n_max} as sorted tuples of Fractions, built from scratch."""
    levels = [(Fraction(0), Fraction(1))]
    for _ in range(n_max):
        prev = levels[-1]
        nxt = []
        for a, b in zip(prev, prev[1:]):
            nxt.append(a)
            nxt.append(Fraction(a.numerator + b.numerator, a.denominator + b.denominator))
        nxt.append(prev[-1])
        levels.append(tuple(nxt))
    return levels
