import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from locallaws import DomainError
from locallaws.euler import EULER_GAMMA, big_F, shifted_mertens, zeta1
from locallaws.laws import (LawParams, PredictionRecord, Regime, bridge15, classify_regime,
                            envelope19, envelope19_terms, et21_parameters, predict_et21,
                            predict_phi43, predict_sr17, predict_thm11, predict_thm13,
                            predict_ur42)
from locallaws.specfun import dickman_rho, rho_r, sigma_r


def test_params_derived():
    p = LawParams(10**8, 10**4, 3)
    assert p.u == pytest.approx(2.0)
    assert p.r == pytest.approx(3 / math.log(math.log(10**4)))
    assert p.w == pytest.approx(math.log(1e8) / math.log(3e4))
    with pytest.raises(DomainError):
        LawParams(100, 200, 1)
    with pytest.raises(DomainError):
        LawParams(100, 20, -1)
    with pytest.raises(DomainError):
        LawParams(100, 20, 1.5)


def test_thm11_k0_is_mertens_form():
    p = LawParams(10**6, 100, 0)
    assert predict_thm11(p) == pytest.approx(math.exp(-EULER_GAMMA) * 1e6 / math.log(100), rel=1e-14)


def test_thm11_independent_evaluation():
    x, y, k = 10**8, 100, 2
    with mpmath.workdps(30):
        ll = mpmath.log(mpmath.log(y))
        r = k / ll
        F = mpmath.mpf(big_F(float(r)).value)
        expected = x * F * mpmath.exp(mpmath.euler * (r - 1)) * ll**k / (2 * mpmath.log(y))
    assert predict_thm11(LawParams(x, y, k)) == pytest.approx(float(expected), rel=1e-12)


def test_small_y_rejected():
    with pytest.raises(DomainError):
        predict_thm11(LawParams(1000, 10, 1))


# envelope19, thm13, u_r42 and phi43 also depend on x through log(3x/y) or u
@pytest.mark.parametrize("fn", [predict_thm11, predict_et21])
def test_linear_in_x(fn):
    a = fn(LawParams(10**7, 1000, 2))
    b = fn(LawParams(2 * 10**7, 1000, 2))
    assert b == pytest.approx(2 * a, rel=1e-12)


def test_linear_in_x_friable_laws():
    assert predict_ur42(LawParams(2 * 10**6, 100, 1), 1.5) == pytest.approx(
        2 * predict_ur42(LawParams(10**6, 100, 1), 1.5) * rho_r(1.5, math.log(2e6) / math.log(100))
        / rho_r(1.5, 3.0), rel=1e-12)


def test_et21_examples():
    p = LawParams(10**6, 1000, 0)
    assert predict_et21(p) == pytest.approx(1e6 / zeta1(1000), rel=1e-13)
    p = LawParams(10**8, 10**3, 1)
    L, M, rho = et21_parameters(p)
    assert p.k <= L and M == p.loglog_y
    expected = 1e8 * shifted_mertens(1000, rho - 1) * M / math.e
    assert predict_et21(p) == pytest.approx(expected, rel=1e-13)
    with pytest.raises(DomainError):
        predict_et21(LawParams(10**4, 16, 15))


def test_et21_near_thm11():
    p = LawParams(10**8, 10**3, 3)
    assert predict_et21(p) / predict_thm11(p) == pytest.approx(1, abs=0.2)


def test_sr17_examples():
    p = LawParams(10**8, 10, 0)
    assert predict_sr17(p, 1.0) == pytest.approx(1e8, rel=1e-3)
    p = LawParams(10**6, 10**6, 0)
    assert predict_sr17(p, 2.0) == pytest.approx(big_F(2.0).value * 1e6 * math.log(1e6), rel=1e-12)
    p = LawParams(10**8, 10**4, 1)
    r = 0.5
    comp = big_F(r).value * sigma_r(r, 2.0) * 1e8 * math.log(1e4) ** (r - 1)
    assert predict_sr17(p, r) == pytest.approx(comp, rel=1e-12)
    with pytest.raises(DomainError):
        predict_sr17(p, 0.0)


@pytest.mark.parametrize("x,y,k", [(10**8, 10**3, 2), (10**8, 3162, 2), (10**6, 100, 3)])
def test_thm13_identity(x, y, k):
    p = LawParams(x, y, k)
    lhs = predict_thm13(p) * math.exp(EULER_GAMMA * (p.r - 1))
    rhs = predict_thm11(p) * sigma_r(p.r, p.u)
    assert lhs == pytest.approx(rhs, rel=1e-12)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_thm13_large_u_limit(r):
    y = 100
    k = r * math.log(math.log(y))
    # choose x with u = 9; use integer k by moving y to hit r exactly
    y = math.exp(math.exp(round(k) / r)) if round(k) >= 1 else y
    k = max(1, round(k))
    x = y**9
    p = LawParams(x, y, k)
    assert predict_thm13(p) / predict_thm11(p) == pytest.approx(1, abs=1e-3)


def test_bridge_examples():
    p = LawParams(10**6, 1000, 3)
    assert bridge15(p, 0) == 0
    ll = p.loglog_y
    assert bridge15(p, 1234.0) == pytest.approx(1234 * ll**3 / (6 * math.e**3), rel=1e-13)
    # single-class histogram at k with r log log y = k: N (r ll)^k e^-k / k! = N k^k e^-k / k!
    N = 1000
    s_r = N * p.r**3
    assert bridge15(p, s_r) == pytest.approx(N * 27 * math.exp(-3) / 6, rel=1e-12)
    assert 27 * math.exp(-3) / 6 == pytest.approx(1 / math.sqrt(6 * math.pi), rel=0.1)
    with pytest.raises(DomainError):
        bridge15(LawParams(10**6, 1000, 0), 1.0)


def test_envelope_examples():
    x = 10**6
    p = LawParams(x, x, 1)
    assert envelope19(p) == pytest.approx(x / math.log(x) * (1 + math.log(math.log(3))), rel=1e-13)
    p = LawParams(10**7, 10**4, 1)
    assert envelope19(p) == pytest.approx(1e7 * (1 + math.log(math.log(3e3))) / math.log(1e4), rel=1e-13)
    p = LawParams(10**8, 10**6, 3)
    ll, l3 = math.log(math.log(1e6)), math.log(math.log(3e2))
    assert envelope19(p) == pytest.approx(1e8 / math.log(1e6) * (ll**2 / 2 + l3**3 / 6), rel=1e-13)
    with pytest.raises(DomainError):
        envelope19(LawParams(10**6, 10**3, 0))


def test_envelope_crossover_unique():
    # the crossover sits near y = 2900, below sqrt(x)
    x = 10**8
    ys = np.logspace(math.log10(16), 8, 61)
    sign = [np.sign(np.subtract(*envelope19_terms(LawParams(x, float(y), 4)))) for y in ys]
    assert sign[0] < 0 and sign[-1] > 0
    assert envelope19_terms(LawParams(x, 2000, 4))[1] > envelope19_terms(LawParams(x, 2000, 4))[0]
    assert envelope19_terms(LawParams(x, 4000, 4))[1] < envelope19_terms(LawParams(x, 4000, 4))[0]
    assert sum(a != b for a, b in zip(sign, sign[1:])) == 1


def test_ur42_examples():
    assert predict_ur42(LawParams(10**6, 10**6, 0), 1.0) == pytest.approx(1e6, rel=1e-13)
    assert predict_ur42(LawParams(10**6, 1000, 0), 1.0) == pytest.approx(1e6 * (1 - math.log(2)), rel=1e-12)
    p = LawParams(10**8, 10**4, 0)
    comp = big_F(2.0).value * rho_r(2.0, 2.0) * 1e8 * math.log(1e4)
    assert predict_ur42(p, 2.0) == pytest.approx(comp, rel=1e-12)
    with pytest.raises(DomainError):
        predict_ur42(p, -1.0)


def test_phi43_examples():
    # u = 2: omega(2) = 1/2
    p = LawParams(10**6, 1000, 0)
    expected = math.exp(EULER_GAMMA) * (1e6 / 2 - 1000) / zeta1(1000)
    assert predict_phi43(p) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DomainError):
        predict_phi43(LawParams(10**5, 10**5, 0))


def test_regime_examples():
    tags = classify_regime(LawParams(10**8, 16, 2))
    assert Regime.SMALL_Y in tags
    # y = sqrt(x) lies on the closed upper boundary of H_eps
    assert Regime.H_EPS in classify_regime(LawParams(10**8, 10**4, 2))
    assert Regime.H_EPS not in classify_regime(LawParams(10**8, 10**4 + 1, 2))
    assert Regime.OUT_OF_STATED_RANGE in classify_regime(LawParams(10**8, 10**8, 0))


def test_regime_law110_threshold():
    x = 10**8
    p = LawParams(x, x, 8)
    lw = math.log(p.w)
    threshold = 1 + p.loglog_y * math.log(lw) / lw
    got = Regime.LARGE_Y_LAW110 in classify_regime(p, kappa=0.1)
    assert got == (p.w >= 3 and 8 >= threshold)


def test_regime_errors():
    with pytest.raises(DomainError):
        classify_regime(LawParams(100, 20, 1), c_small=1.5)
    with pytest.raises(DomainError):
        classify_regime(LawParams(100, 20, 1), kappa=0)


@given(st.integers(min_value=16, max_value=10**12), st.floats(min_value=0.0, max_value=1.0),
       st.integers(min_value=0, max_value=40))
def test_classify_total(x, theta, k):
    y = min(x, max(16, math.floor(x**theta)))
    tags = classify_regime(LawParams(x, y, k))
    assert len(tags) >= 1 and len(set(tags)) == len(tags)


@given(st.integers(min_value=10**3, max_value=10**10), st.floats(min_value=0.3, max_value=1.0),
       st.integers(min_value=1, max_value=8))
def test_predictions_positive(x, theta, k):
    y = min(x, max(16, math.floor(x**theta)))
    p = LawParams(x, y, k)
    assert predict_thm11(p) > 0
    assert envelope19(p) > 0
    if p.r <= 4:
        assert predict_thm13(p) > 0


def test_record_ratio_and_flags():
    p = LawParams(10**6, 100, 3)
    rec = PredictionRecord("thm11", p, 4.0, exact=10**20)
    assert rec.ratio == 2.5e19
    big = 2**60 + 1
    # exact integers beyond 2^53 enter the ratio without rounding
    rec = PredictionRecord("thm11", p, float(2**61), exact=2 * big)
    assert rec.ratio == float(Fraction(2 * big, 2**61))
    assert rec.exact == 2 * big
    p = LawParams(10**6, 16, 5)
    assert p.r > 4
    assert "OUT_OF_STATED_RANGE" in PredictionRecord("thm11", p, 1.0).flags
    with pytest.raises(ValueError):
        PredictionRecord("nope", p, 1.0)
