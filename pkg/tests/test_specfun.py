"""Special-function layer tests.

Reference values are computed by independent oracles: explicit power-series
summation, closed forms (half-integer Bessel, factorials), and mpmath
high-precision evaluation.  The production code path is never used to
generate its own expected values.
"""

import math

import mpmath
import pytest
from scipy.integrate import quad

from coneqm.specfun import (bessel_i, bessel_i_one_term_asymptotic,
                            bessel_i_one_term_asymptotic_scaled,
                            bessel_i_scaled, hyp1f1_terminating,
                            laguerre_sequence, ln_gamma)

mpmath.mp.dps = 30


# ---------------------------------------------------------------- oracles


def series_i_scaled(nu, x, terms=400):
    """Direct power-series oracle: e^{-x} sum_k (x/2)^(nu+2k)/(k! Gamma(nu+k+1))."""
    total = mpmath.mpf(0)
    xh = mpmath.mpf(x) / 2
    for k in range(terms):
        total += xh ** (nu + 2 * k) / (mpmath.factorial(k) * mpmath.gamma(nu + k + 1))
    return float(total * mpmath.exp(-mpmath.mpf(x)))


def mp_i_scaled(nu, x):
    return float(mpmath.besseli(mpmath.mpf(nu), mpmath.mpf(x))
                 * mpmath.exp(-mpmath.mpf(x)))


def hyp1f1_direct(n, b, x):
    """Term-by-term oracle for the terminating 1F1(-n; b; x)."""
    total = mpmath.mpf(0)
    for k in range(n + 1):
        total += (mpmath.rf(-n, k) / mpmath.rf(b, k)
                  * mpmath.mpf(x) ** k / mpmath.factorial(k))
    return float(total)


# ---------------------------------------------------------------- ln_gamma


def test_ln_gamma_trivial_values():
    assert ln_gamma(1.0) == 0.0
    assert ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)


def test_ln_gamma_half():
    # oracle: Gamma(1/2) = sqrt(pi), frozen from 30-digit evaluation
    assert ln_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-14)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.75, 10.0, 57.3, 200.0])
def test_ln_gamma_accuracy(x):
    ref = float(mpmath.loggamma(mpmath.mpf(x)))
    assert ln_gamma(x) == pytest.approx(ref, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
def test_ln_gamma_domain(bad):
    with pytest.raises(ValueError):
        ln_gamma(bad)


# ---------------------------------------------------------- bessel_i_scaled


def test_bessel_trivial_at_zero():
    assert bessel_i_scaled(0.0, 0.0) == 1.0
    assert bessel_i_scaled(0.7, 0.0) == 0.0


def test_bessel_i0_of_1():
    # series oracle value, frozen: I_0(1) = 1.2660658777520084
    assert bessel_i(0.0, 1.0) == pytest.approx(1.2660658777520084, rel=1e-12)
    assert bessel_i_scaled(0.0, 1.0) == pytest.approx(0.46575960759364043,
                                                      rel=1e-12)


def test_bessel_half_order_closed_form():
    # I_{1/2}(x) = sqrt(2/(pi x)) sinh(x)
    for x in (0.3, 1.0, 7.0, 42.0):
        ref = math.sqrt(2.0 / (math.pi * x)) * math.sinh(x) * math.exp(-x)
        assert bessel_i_scaled(0.5, x) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("nu", [0.0, 0.25, 0.5, 1.0, 2.0615528128088303,
                                5.5, 10.0, 33.3, 100.0, 200.0])
@pytest.mark.parametrize("x", [1e-3, 0.5, 2.0, 11.9, 12.1, 25.0, 30.0,
                               100.0, 1e3, 1e4])
def test_bessel_accuracy_grid(nu, x):
    mine = bessel_i_scaled(nu, x)
    ref = mp_i_scaled(nu, x)
    if ref == 0.0 or ref < 1e-290:
        assert mine == pytest.approx(ref, abs=1e-300)
    else:
        assert mine == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("nu,x", [(0.0, 0.7), (1.5, 3.0), (4.0, 9.5)])
def test_bessel_matches_series_oracle(nu, x):
    assert bessel_i_scaled(nu, x) == pytest.approx(series_i_scaled(nu, x),
                                                   rel=1e-12)


def test_bessel_recurrence_consistency():
    # I_{nu-1}(x) - I_{nu+1}(x) = (2 nu / x) I_nu(x), in scaled form
    for nu in (1.0, 2.5, 7.0, 13.5, 20.0):
        for x in (1.0, 3.7, 10.0, 31.0, 100.0):
            lhs = bessel_i_scaled(nu - 1, x) - bessel_i_scaled(nu + 1, x)
            rhs = (2.0 * nu / x) * bessel_i_scaled(nu, x)
            assert lhs == pytest.approx(rhs, rel=1e-9)


def test_bessel_generating_function_identity():
    # sum_m e^{i m dth} I_m(z) = e^{z cos dth}, compared in scaled form.
    # Where the phase factors cancel the sum below the f64 noise floor of
    # its own terms (z (1 - cos dth) > 12), the check is against that floor
    # instead of a meaningless relative figure.
    for z in (0.5, 2.0, 7.3, 15.0, 30.0):
        m_top = math.ceil(z) + 40
        vals = [bessel_i_scaled(m, z) for m in range(m_top + 1)]
        term_scale = vals[0] + 2.0 * sum(vals[1:])
        for dth in (0.0, 0.7, math.pi / 2, 2.3, math.pi):
            acc = complex(vals[0], 0.0)
            for m in range(1, m_top + 1):
                phase = complex(math.cos(m * dth), math.sin(m * dth))
                acc += (phase + phase.conjugate()) * vals[m]
            target = math.exp(z * (math.cos(dth) - 1.0))
            if z * (1.0 - math.cos(dth)) <= 12.0:
                assert abs(acc.real - target) / target < 1e-10
            else:
                assert abs(acc.real - target) < 1e-13 * term_scale
            assert abs(acc.imag) < 1e-12


def test_bessel_domain_errors():
    with pytest.raises(ValueError):
        bessel_i_scaled(-0.5, 1.0)
    with pytest.raises(ValueError):
        bessel_i_scaled(1.0, -2.0)
    with pytest.raises(ValueError):
        bessel_i_scaled(math.nan, 1.0)


def test_bessel_unscaled_overflow():
    with pytest.raises(OverflowError):
        bessel_i(0.0, 800.0)


# ------------------------------------------------------ one-term asymptotic


def test_asymptotic_correction_vanishes_at_half():
    # nu = 1/2 makes nu^2 - 1/4 = 0: approximant is exactly e^z/sqrt(2 pi z)
    for z in (0.4, 3.0, 55.0):
        expect = math.exp(z) / math.sqrt(2.0 * math.pi * z)
        assert bessel_i_one_term_asymptotic(0.5, z) == pytest.approx(
            expect, rel=1e-15)


def test_asymptotic_direct_substitution():
    # (nu=2, z=10): (1/sqrt(20 pi)) exp(10 - 3.75/20)
    expect = math.exp(10.0 - 3.75 / 20.0) / math.sqrt(20.0 * math.pi)
    assert bessel_i_one_term_asymptotic(2.0, 10.0) == pytest.approx(
        expect, rel=1e-15)


def test_asymptotic_accuracy_at_z50():
    # relative error vs the series/mpmath oracle < 1e-3 (measured ~2.6e-5)
    ref = mp_i_scaled(0.0, 50.0)
    approx = bessel_i_one_term_asymptotic_scaled(0.0, 50.0)
    assert abs(approx - ref) / ref < 1e-3


def test_asymptotic_error_decreases_monotonically():
    for nu in (0.0, 1.0, 2.0):
        z0 = max(10.0, 2.0 * nu * nu)
        zs = [z0 * (1.5 ** k) for k in range(6)]
        errs = []
        for z in zs:
            ref = mp_i_scaled(nu, z)
            errs.append(abs(bessel_i_one_term_asymptotic_scaled(nu, z) - ref) / ref)
        assert all(errs[i + 1] < errs[i] for i in range(len(errs) - 1))


def test_asymptotic_domain():
    with pytest.raises(ValueError):
        bessel_i_one_term_asymptotic(1.0, 0.0)
    with pytest.raises(ValueError):
        bessel_i_one_term_asymptotic(1.0, -3.0)


# ------------------------------------------------------------------- 1F1


def test_hyp1f1_trivial():
    assert hyp1f1_terminating(0, 1.5, 7.3) == 1.0
    assert hyp1f1_terminating(1, 2.0, 2.0) == pytest.approx(0.0, abs=1e-15)


def test_hyp1f1_direct_sum_example():
    # (n=2, b=2, x=1): 1 - 1 + 1/6
    assert hyp1f1_terminating(2, 2.0, 1.0) == pytest.approx(1.0 / 6.0, rel=1e-14)


@pytest.mark.parametrize("n", [3, 5, 8, 15])
@pytest.mark.parametrize("b", [1.0, 1.5, 3.0615528128088303])
@pytest.mark.parametrize("x", [0.2, 1.0, 4.5, 12.0])
def test_hyp1f1_matches_oracles(n, b, x):
    val = hyp1f1_terminating(n, b, x)
    ref = float(mpmath.hyp1f1(-n, b, x))
    assert val == pytest.approx(ref, rel=1e-11, abs=1e-13)
    assert val == pytest.approx(hyp1f1_direct(n, b, x), rel=1e-9, abs=1e-11)


def test_hyp1f1_domain():
    with pytest.raises(ValueError):
        hyp1f1_terminating(-1, 2.0, 1.0)
    with pytest.raises(ValueError):
        hyp1f1_terminating(2, 0.0, 1.0)
    with pytest.raises(ValueError):
        hyp1f1_terminating(2, -1.5, 1.0)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0615528128088303])
def test_laguerre_orthogonality(alpha):
    # integral_0^inf x^alpha e^{-x} L_n L_n' dx = delta_{nn'} Gamma(n+alpha+1)/n!
    def lag(n, x):
        return laguerre_sequence(n, alpha, x)[n]

    for n in range(6):
        for np_ in range(n, 6):
            val, _ = quad(lambda x: x ** alpha * math.exp(-x)
                          * lag(n, x) * lag(np_, x),
                          0.0, 60.0, epsabs=1e-12, epsrel=1e-12, limit=200)
            if n == np_:
                expect = math.exp(math.lgamma(n + alpha + 1.0)
                                  - math.lgamma(n + 1.0))
            else:
                expect = 0.0
            assert val == pytest.approx(expect, abs=1e-8, rel=1e-8)
