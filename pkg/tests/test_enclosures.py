import math
import random
from fractions import Fraction

import mpmath
import pytest

from spin2.enclosures import (exp_lo_hi, in_exp_window, ln_lo_hi, ln_sign,
                              log2_approx, log_approx, lt_exp, root_lo_hi,
                              sqrt_lo_hi)
from spin2.rationals import rat

mpmath.mp.dps = 60


def mpf_of(q):
    q = Fraction(str(q).replace("mpq", "").strip("()"))
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


def assert_contains(lo, hi, true_val, prec):
    assert mpf_of(lo) <= true_val <= mpf_of(hi)
    assert mpf_of(hi) - mpf_of(lo) <= mpmath.mpf(2) ** (2 - prec)


def test_ln_known_values():
    assert ln_lo_hi(1) == (0, 0)
    lo, hi = ln_lo_hi(2, 80)
    assert_contains(lo, hi, mpmath.log(2), 80)
    lo, hi = ln_lo_hi(rat(1, 3), 64)
    assert_contains(lo, hi, mpmath.log(mpmath.mpf(1) / 3), 64)


def test_ln_random_sweep():
    rng = random.Random(41)
    for _ in range(40):
        num = rng.randint(1, 10 ** 12)
        den = rng.randint(1, 10 ** 12)
        prec = rng.choice([16, 32, 64, 128])
        lo, hi = ln_lo_hi(rat(num, den), prec)
        assert_contains(lo, hi, mpmath.log(mpmath.mpf(num) / den), prec)


def test_ln_huge_arguments():
    q = rat(17) ** 3000 / rat(5) ** 2500
    lo, hi = ln_lo_hi(q, 64)
    true = 3000 * mpmath.log(17) - 2500 * mpmath.log(5)
    assert_contains(lo, hi, true, 64)
    lo, hi = ln_lo_hi(1 / q, 64)
    assert_contains(lo, hi, -true, 64)


def test_exp_known_values():
    assert exp_lo_hi(0) == (1, 1)
    lo, hi = exp_lo_hi(1, 80)
    assert_contains(lo, hi, mpmath.e, 80)
    lo, hi = exp_lo_hi(-1, 64)
    assert mpf_of(lo) <= 1 / mpmath.e <= mpf_of(hi)


def test_exp_random_sweep():
    rng = random.Random(42)
    for _ in range(40):
        num = rng.randint(-4000, 4000)
        den = rng.randint(1, 1000)
        x = rat(num, den)
        lo, hi = exp_lo_hi(x, 64)
        true = mpmath.exp(mpmath.mpf(num) / den)
        assert mpf_of(lo) <= true <= mpf_of(hi)
        assert lo > 0
        # relative width stays tiny even after the squaring reduction
        assert (mpf_of(hi) - mpf_of(lo)) / true <= mpmath.mpf(2) ** -50


def test_exp_large_argument():
    lo, hi = exp_lo_hi(500, 64)
    true = mpmath.exp(500)
    assert mpf_of(lo) <= true <= mpf_of(hi)
    assert (mpf_of(hi) - mpf_of(lo)) / true <= mpmath.mpf(2) ** -50


def test_sqrt_and_root():
    assert sqrt_lo_hi(rat(9, 4)) == (rat(3, 2), rat(3, 2))
    lo, hi = sqrt_lo_hi(2, 100)
    assert_contains(lo, hi, mpmath.sqrt(2), 100)
    assert root_lo_hi(rat(27, 8), 3) == (rat(3, 2), rat(3, 2))
    lo, hi = root_lo_hi(rat(-27, 8), 3)
    assert lo == hi == rat(-3, 2)
    lo, hi = root_lo_hi(10, 9, 64)
    assert_contains(lo, hi, mpmath.mpf(10) ** (mpmath.mpf(1) / 9), 64)
    with pytest.raises(ValueError):
        root_lo_hi(-2, 2)
    rng = random.Random(43)
    for _ in range(25):
        num = rng.randint(1, 10 ** 9)
        den = rng.randint(1, 10 ** 6)
        k = rng.randint(2, 9)
        lo, hi = root_lo_hi(rat(num, den), k, 64)
        true = (mpmath.mpf(num) / den) ** (mpmath.mpf(1) / k)
        assert mpf_of(lo) <= true <= mpf_of(hi)


def test_log_approx_helpers():
    assert abs(log2_approx(1024) - 10) < 1e-9
    assert abs(log_approx(rat(1, 7)) + math.log(7)) < 1e-9
    big = rat(3) ** 100000
    assert abs(log2_approx(big) - 100000 * math.log2(3)) < 1e-6 * 100000


def test_ln_sign_and_lt_exp():
    assert ln_sign(1) == 0
    assert ln_sign(2) == 1
    assert ln_sign(rat(1, 2)) == -1
    assert ln_sign(3, 1) == 1          # ln 3 > 1
    assert ln_sign(rat(27, 10), 1) == -1  # ln 2.7 < 1
    assert lt_exp(rat(27, 10), 1)
    assert not lt_exp(3, 1)
    assert lt_exp(-5, rat(-100))       # nonpositive x is always below
    # a really tight call: x = 271828/100000 vs e
    assert lt_exp(rat(271828, 100000), 1)
    assert not lt_exp(rat(271829, 100000), 1)


def test_in_exp_window():
    # window around 7 with eps = 1/10: (7e^-0.1, 7e^0.1) ~ (6.3339, 7.7362)
    assert in_exp_window(7, 7, rat(1, 10))
    assert in_exp_window(rat(64, 10), 7, rat(1, 10))
    assert not in_exp_window(rat(63, 10), 7, rat(1, 10))
    assert not in_exp_window(rat(78, 10), 7, rat(1, 10))
    # negative center flips the interval
    assert in_exp_window(rat(-64, 10), -7, rat(1, 10))
    assert not in_exp_window(rat(64, 10), -7, rat(1, 10))
    assert not in_exp_window(0, 7, rat(1, 10))
    with pytest.raises(ValueError):
        in_exp_window(1, 1, 0)


def test_window_random_sweep_against_mpmath():
    rng = random.Random(44)
    for _ in range(60):
        center = rat(rng.randint(1, 500), rng.randint(1, 500))
        eps = rat(1, rng.randint(2, 10 ** 6))
        x = center * rat(10 ** 9 + rng.randint(-2 * 10 ** 3, 2 * 10 ** 3),
                         10 ** 9)
        want = (mpmath.exp(-mpf_of(eps)) < mpf_of(x) / mpf_of(center)
                < mpmath.exp(mpf_of(eps)))
        assert in_exp_window(x, center, eps) == want
