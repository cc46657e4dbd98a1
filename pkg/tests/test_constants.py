from fractions import Fraction

import mpmath as mp
import pytest

from qmark.constants import (
    check_orderings,
    default_bits,
    kappa3_equation,
    kappas,
    spectral,
)
from qmark.errors import PrecisionError

mp.mp.dps = 60


def as_mpf(fr: Fraction):
    return mp.mpf(fr.numerator) / fr.denominator


def contains_mpf(iv, value) -> bool:
    return as_mpf(iv.lo) <= value <= as_mpf(iv.hi)


def mp_lambda(j):
    return (j + mp.sqrt(j * j + 4)) / 2


def mp_L(j):
    return mp.log(mp_lambda(j)) - j * mp.log(2) / 2


def test_spectral_against_mpmath():
    for j in (1, 2, 3, 4, 5, 6, 12):
        s = spectral(j)
        assert contains_mpf(s.lam, mp_lambda(j))
        assert contains_mpf(s.L, mp_L(j))
        assert j < s.lam.lo and s.lam.hi < j + 1
        assert s.lam.width <= Fraction(1, 2**64)


def test_spectral_known_signs():
    assert spectral(4).L.is_positive()
    assert spectral(5).L.is_negative()
    # L_4 ~ 0.0573, L_5 ~ -0.0856
    assert Fraction("0.0573") < spectral(4).L.lo < Fraction("0.0574")
    assert Fraction("-0.0857") < spectral(5).L.lo < Fraction("-0.0856")


def test_c1_c2_solve_the_linear_system():
    for j in (1, 2, 5, 9):
        s = spectral(j)
        one = s.c1 + s.c2
        assert Fraction(1) in one
        lhs = s.c1 * s.lam - s.c2 / s.lam
        assert Fraction(j) in lhs
        assert s.c1.lo > 1 - Fraction(j, j * j + 1) and s.c1.hi < 1
        assert s.c2.lo > 0 and s.c2.hi < Fraction(j, j * j + 1)


def test_constant_continuant_formula_reconstruction():
    # k_{l,j} = c1 lam^l + c2 (-lam)^{-l}: check the enclosure brackets it
    from qmark.cf import constant_continuant

    for j in (1, 3, 7):
        s = spectral(j)
        for length in (1, 2, 5, 9):
            k = constant_continuant(length, j)
            lam_l = s.lam.lo**length
            approx = as_mpf(s.c1.lo) * float(lam_l)
            assert abs(approx - k) < 1  # alternating correction is below 1


def test_kappa_windows():
    k = kappas()
    assert Fraction("1.388") < k.kappa1.lo and k.kappa1.hi < Fraction("1.389")
    assert Fraction("4.401") < k.kappa2.lo and k.kappa2.hi < Fraction("4.402")
    assert Fraction("5.319") < k.kappa3.lo and k.kappa3.hi < Fraction("5.320")
    assert contains_mpf(k.kappa1, 2 * mp.log(mp_lambda(1)) / mp.log(2))
    assert contains_mpf(k.kappa2, (4 * mp_L(5) - 5 * mp_L(4)) / (mp_L(5) - mp_L(4)))
    root = mp.findroot(lambda x: 2 * mp.log(1 + x) / mp.log(2) - x, mp.mpf("5.32"))
    assert contains_mpf(k.kappa3, root)


def test_kappa3_satisfies_its_equation():
    k = kappas()
    residual_lo = kappa3_equation(k.kappa3.lo, 80)
    residual_hi = kappa3_equation(k.kappa3.hi, 80)
    # the equation changes sign across the enclosure
    assert residual_lo.is_positive() and residual_hi.is_negative()


def test_kappa2_vertex_identity_encloses_zero():
    k = kappas()
    L4, L5 = spectral(4).L, spectral(5).L
    vertex = (k.kappa2 - 4) * L5 + (5 - k.kappa2) * L4
    assert Fraction(0) in vertex
    assert vertex.width <= Fraction(1, 2**56)


def test_orderings_certified():
    report = check_orderings()
    assert report.all_certified
    labels = [c.label for c in report.comparisons]
    assert labels[:5] == ["L2 > L3", "L3 > L1", "L1 > L4", "L4 > 0", "0 > L5"]
    assert "L11 > L12" in labels
    assert labels[-1] == "L5/(L5-L4) >= 1/2"
    ratio_margin = report.comparisons[-1].margin
    # ratio ~ 0.59895, margin to 1/2 ~ 0.09895
    assert Fraction("0.0989") < ratio_margin.lo < Fraction("0.0990")


def test_doubling_precision_shrinks_and_preserves():
    coarse = kappas(64)
    fine = kappas(128)
    for name in ("kappa1", "kappa2", "kappa3"):
        a, b = getattr(coarse, name), getattr(fine, name)
        assert b.width < a.width
        assert b.intersects(a)
    # certified comparisons stay put
    avg = Fraction(22, 5)
    assert coarse.kappa2.certainly_gt(avg) and fine.kappa2.certainly_gt(avg)


def test_default_bits_env_override(monkeypatch):
    monkeypatch.setenv("QM_PRECISION_BITS", "96")
    assert default_bits() == 96
    monkeypatch.setenv("QM_PRECISION_BITS", "four")
    with pytest.raises(PrecisionError):
        default_bits()
    monkeypatch.delenv("QM_PRECISION_BITS")
    assert default_bits() == 64
