import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftconv.errors import PoleError
from shiftconv.specfun import (
    delta_r,
    delta_r_poles,
    gamma_complex,
    hyp2f1,
    pm_polynomial,
    pochhammer,
    rgamma,
    sinpi,
)


def test_gamma_against_mpmath(mp30):
    rng = random.Random(11)
    worst = 0.0
    for _ in range(400):
        s = complex(rng.uniform(-30, 40), rng.uniform(-40, 40))
        ref = complex(mpmath.gamma(s))
        worst = max(worst, abs(gamma_complex(s) - ref) / abs(ref))
    assert worst < 1e-12


def test_gamma_special_values():
    assert gamma_complex(5) == 24
    assert abs(gamma_complex(0.5) - math.sqrt(math.pi)) < 1e-14
    assert abs(gamma_complex(-0.5) + 2 * math.sqrt(math.pi)) < 1e-14
    for n in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma_complex(n)
        assert rgamma(n) == 0


def test_gamma_near_negative_poles(mp30):
    for s in (-3 + 1e-7, -10.5, -20 + 0.25j):
        ref = complex(mpmath.gamma(s))
        assert abs(gamma_complex(s) - ref) / abs(ref) < 1e-12


def test_sinpi_exact_zeros():
    assert sinpi(3) == 0 and sinpi(-8) == 0
    assert abs(sinpi(0.5) - 1) < 1e-16


@given(st.complex_numbers(max_magnitude=20).filter(lambda z: abs(z.imag) > 0.01))
@settings(max_examples=50)
def test_gamma_recurrence(s):
    assert abs(gamma_complex(s + 1) - s * gamma_complex(s)) <= 1e-11 * abs(gamma_complex(s + 1)) + 1e-300


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(-3, 5) == 0
    assert pochhammer(4, 0) == 1
    assert abs(pochhammer(0.5 + 1j, 4) - complex(mpmath.rf(0.5 + 1j, 4))) < 1e-12


def test_hyp2f1_series_against_mpmath(mp30):
    rng = random.Random(5)
    for _ in range(100):
        a, b = complex(rng.uniform(-5, 5), rng.uniform(-2, 2)), rng.uniform(-5, 5)
        c = complex(rng.uniform(0.5, 6), rng.uniform(-2, 2))
        z = 0.8 * rng.random() * cmath.exp(2j * math.pi * rng.random())
        ref = complex(mpmath.hyp2f1(a, b, c, z))
        assert abs(hyp2f1(a, b, c, z) - ref) <= 1e-12 * max(1, abs(ref))


def test_hyp2f1_exact_terminating():
    # (1-z)^3
    assert hyp2f1(-3, 1, 1, Fraction(1, 2)) == Fraction(1, 8)
    assert hyp2f1(-2, 1, 1, 3) == 4  # terminating: any z allowed


def test_hyp2f1_minus_one_avoids_cancellation():
    z = 1e-12
    exact = 1.25 * z + (1.5 * 2.5 * 2.5 * 3.5) / (3 * 4 * 2) * z * z
    assert abs(hyp2f1(1.5, 2.5, 3.0, z, minus_one=True) - exact) < 1e-15 * exact


def test_hyp2f1_errors():
    with pytest.raises(PoleError):
        hyp2f1(1, 1, -2, 0.5)
    # c = -2 is fine if the series stops first
    assert hyp2f1(-1, 1, -2, Fraction(1, 2)) == Fraction(5, 4)
    with pytest.raises(ValueError):
        hyp2f1(0.5, 0.5, 1.5, 1.2)


def test_pm_polynomial_known_case():
    P = pm_polynomial(2, 12)
    assert P.lambda_ == (1, Fraction(-6, 29), Fraction(1, 261))
    assert pm_polynomial(1, 12).lambda_[1] == Fraction(-1, 25)


def test_pm_polynomial_matches_hyp2f1():
    for m, k, r in ((3, 12, 1), (5, 16, 4), (0, 7, 2)):
        P = pm_polynomial(m, k, r)
        z = Fraction(1, 9)
        assert P(z) == hyp2f1(-m, Fraction(1, 2) - m, Fraction(3, 2) - k - 2 * m, z)
        assert P.alpha == tuple(r ** (2 * v) * P.lambda_[v] for v in range(m + 1))


def _delta_r_mpmath(s, n, k, r):
    z0 = mpmath.mpf(r) ** 2 / (2 * n + r) ** 2
    f1 = mpmath.hyp2f1((k + s - 1) / 2, (k + s) / 2, s + 0.5, z0)
    f2 = mpmath.hyp2f1((k - s) / 2, (k - s + 1) / 2, 1.5 - s, z0)
    coef = mpmath.gamma(k - s) * mpmath.gamma(s - 0.5) / (mpmath.gamma(k + s - 1) * mpmath.gamma(0.5 - s))
    power = ((4 * n + 2 * r) / mpmath.mpf(r)) ** (2 * s - 1)
    return complex(-(f1 - 1) - coef * power * (f2 - 1))


@pytest.mark.parametrize("s,n,k,r", [(0.4 + 3j, 10, 12, 1), (1.2 - 0.5j, 3, 16, 2), (-0.3 + 1j, 50, 12, 5)])
def test_delta_r_against_mpmath(mp30, s, n, k, r):
    ref = _delta_r_mpmath(s, n, k, r)
    assert abs(delta_r(s, n, k, r) - ref) <= 1e-12 * abs(ref)


def test_delta_r_decay():
    vals = [abs(delta_r(0.4 + 3j, n, 12, 1)) for n in (10, 100, 1000)]
    assert vals[0] > vals[1] > vals[2]


def test_delta_r_poles_and_strip():
    assert "Gamma(s-1/2)" in delta_r_poles(0.5, 12)
    with pytest.raises(PoleError):
        delta_r(0.5 + 1e-9, 10, 12, 1)
    with pytest.raises(ValueError):
        delta_r(2.5, 10, 12, 1)
