import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special as sp
from scipy import stats

from serrors.errors import DomainError
from serrors.special import (
    log1m_exp,
    log_add_exp,
    log_beta,
    log_binomial_coefficient,
    log_gamma,
    log_sub_exp,
    normal_cdf,
    normal_log_cdf,
    normal_log_interval_mass,
    normal_log_tail,
    normal_pdf,
    normal_quantile,
    regularized_incomplete_beta,
)

mpmath.mp.dps = 40


def mp_log_beta(a, b):
    return float(mpmath.log(mpmath.beta(a, b)))


class TestLogGamma:
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 10.0, 171.5, 1e6])
    def test_matches_mpmath(self, x):
        assert log_gamma(x) == pytest.approx(float(mpmath.loggamma(x)), rel=1e-14)

    def test_exact_values(self):
        assert log_gamma(1.0) == 0.0
        assert log_gamma(10.0) == pytest.approx(math.log(362880), rel=1e-15)
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_nonpositive_raises(self, x):
        with pytest.raises(DomainError):
            log_gamma(x)


class TestLogBeta:
    @pytest.mark.parametrize(
        "a,b",
        [(0.5, 0.5), (10.0, 4.0), (15.5, 5.5), (1046.5, 954.5), (1_001_445.5, 998_555.5),
         (52_263_471.5, 52_226_529.5), (1e-3, 5.0)],
    )
    def test_matches_mpmath(self, a, b):
        exact = mp_log_beta(a, b)
        assert log_beta(a, b) == pytest.approx(exact, rel=1e-13, abs=1e-8)

    def test_exact_values(self):
        assert log_beta(1.0, 1.0) == 0.0
        assert log_beta(10.0, 4.0) == pytest.approx(math.log(2177280 / 6227020800), rel=1e-14)

    def test_half_half_is_log_pi(self):
        assert log_beta(0.5, 0.5) == pytest.approx(math.log(math.pi), rel=1e-15)

    def test_large_arguments_beat_naive_lgamma(self):
        a, b = 52_263_471.5, 52_226_529.5
        exact = mp_log_beta(a, b)
        assert abs(log_beta(a, b) - exact) < 1e-7

    @given(st.floats(0.01, 1e7), st.floats(0.01, 1e7))
    def test_symmetric(self, a, b):
        assert log_beta(a, b) == log_beta(b, a)

    @given(st.floats(0.1, 1e4), st.floats(0.1, 1e4))
    def test_recurrence(self, a, b):
        # B(a+1, b) = B(a, b) a / (a + b)
        lhs = log_beta(a + 1.0, b)
        rhs = log_beta(a, b) + math.log(a) - math.log(a + b)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            log_beta(0.0, 1.0)


def test_log_binomial_coefficient():
    assert math.exp(log_binomial_coefficient(12, 9)) == pytest.approx(220.0, rel=1e-13)
    assert log_binomial_coefficient(5, 0) == 0.0
    with pytest.raises(DomainError):
        log_binomial_coefficient(3, 4)


class TestIncompleteBeta:
    @pytest.mark.parametrize(
        "x,a,b",
        [(0.5, 10.0, 4.0), (0.3, 0.5, 0.5), (0.9, 2.0, 30.0), (0.5, 9.0, 4.0), (0.01, 0.5, 200.0),
         (0.5002, 2e5, 2e5), (0.4999, 1e6 + 0.5, 1e6 + 0.5)],
    )
    def test_matches_scipy(self, x, a, b):
        assert regularized_incomplete_beta(x, a, b) == pytest.approx(sp.betainc(a, b, x), rel=1e-10, abs=1e-15)

    def test_large_symmetric_arguments(self):
        # Reference value from mpmath quadrature of the Beta density.
        assert regularized_incomplete_beta(0.4999, 1_000_000.5, 1_000_000.5) == pytest.approx(
            0.38864869075894017, abs=1e-12
        )

    def test_integer_identity(self):
        # I_{1/2}(10, 4) = P(Bin(13, 1/2) >= 10) = 378 / 8192
        assert regularized_incomplete_beta(0.5, 10, 4) == pytest.approx(378 / 8192, abs=1e-15)
        assert regularized_incomplete_beta(0.5, 2, 2) == pytest.approx(0.5, abs=1e-15)

    def test_binomial_identity(self):
        # P(X >= 9 | n=12, 1/2) = I_{1/2}(9, 4)
        assert regularized_incomplete_beta(0.5, 9, 4) == pytest.approx(299 / 4096, rel=1e-13)

    def test_endpoints(self):
        assert regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0
        assert regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0

    # Below 1e-3, 1 - x itself rounds and the identity cannot be checked.
    @given(st.floats(1e-3, 1.0 - 1e-3), st.floats(0.1, 1e4), st.floats(0.1, 1e4))
    def test_reflection(self, x, a, b):
        total = regularized_incomplete_beta(x, a, b) + regularized_incomplete_beta(1.0 - x, b, a)
        assert total == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(0.1, 50.0), st.floats(0.1, 50.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_monotone_in_x(self, a, b, x, y):
        lo, hi = sorted((x, y))
        assert regularized_incomplete_beta(lo, a, b) <= regularized_incomplete_beta(hi, a, b) + 1e-14

    def test_domain(self):
        with pytest.raises(DomainError):
            regularized_incomplete_beta(1.5, 1.0, 1.0)
        with pytest.raises(DomainError):
            regularized_incomplete_beta(0.5, -1.0, 1.0)


class TestNormal:
    @pytest.mark.parametrize("z", [-8.0, -1.0, 0.0, 0.5, 3.0, 12.0])
    def test_cdf_and_pdf(self, z):
        assert normal_cdf(z) == pytest.approx(stats.norm.cdf(z), rel=1e-14)
        assert normal_pdf(z) == pytest.approx(stats.norm.pdf(z), rel=1e-14)

    @pytest.mark.parametrize("z", [-30.0, -5.5, -1.0, 0.0, 2.0, 20.0, 34.9, 35.0, 40.0, 200.0, 1e4])
    def test_log_tail_matches_scipy(self, z):
        assert normal_log_tail(z) == pytest.approx(sp.log_ndtr(-z), rel=1e-12, abs=1e-300)

    @given(st.floats(10.0, 40.0))
    def test_tail_between_mills_bounds(self, z):
        upper = normal_pdf(z) / z
        lower = normal_pdf(z) * z / (1.0 + z * z)
        tail = math.exp(normal_log_tail(z))
        assert lower * (1 - 1e-12) <= tail <= upper * (1 + 1e-12)

    def test_alpha_at_n100(self):
        assert normal_log_tail(3.4023) == pytest.approx(math.log(3.34e-4), abs=5e-3)

    def test_log_cdf(self):
        assert normal_log_cdf(-50.0) == pytest.approx(sp.log_ndtr(-50.0), rel=1e-13)

    @pytest.mark.parametrize("p", [1e-300, 1e-10, 0.05, 0.5, 0.9, 0.95, 1 - 1e-12])
    def test_quantile_matches_scipy(self, p):
        assert normal_quantile(p) == pytest.approx(stats.norm.ppf(p), rel=1e-12)

    def test_known_quantiles(self):
        assert normal_quantile(0.95) == pytest.approx(1.6448536269514722, rel=1e-15)
        assert normal_quantile(0.9) == pytest.approx(1.2815515655446004, rel=1e-15)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 2.0])
    def test_quantile_domain(self, p):
        with pytest.raises(DomainError):
            normal_quantile(p)

    @given(st.floats(1e-8, 1 - 1e-8))
    def test_quantile_round_trip(self, p):
        assert abs(normal_cdf(normal_quantile(p)) - p) <= 1e-12

    @pytest.mark.parametrize("lo,hi", [(-1.0, 1.0), (2.0, 3.0), (-40.0, -39.0), (30.0, 31.0), (-60.0, 60.0)])
    def test_interval_mass(self, lo, hi):
        log_in, log_out = normal_log_interval_mass(lo, hi)
        # Upper tails as ncdf(-z) so the oracle itself does not cancel.
        inside = mpmath.ncdf(-lo) - mpmath.ncdf(-hi) if lo > 0 else mpmath.ncdf(hi) - mpmath.ncdf(lo)
        outside = mpmath.ncdf(lo) + mpmath.ncdf(-hi)
        assert log_in == pytest.approx(float(mpmath.log(inside)), rel=1e-10)
        assert log_out == pytest.approx(float(mpmath.log(outside)), rel=1e-10)

    @given(st.floats(-30, 30), st.floats(0.0, 20))
    def test_interval_masses_sum_to_one(self, lo, width):
        log_in, log_out = normal_log_interval_mass(lo, lo + width)
        assert np.logaddexp(log_in, log_out) == pytest.approx(0.0, abs=1e-12)


class TestLogArithmetic:
    @given(st.floats(-700, 700), st.floats(-700, 700))
    def test_add_matches_numpy(self, x, y):
        assert log_add_exp(x, y) == pytest.approx(np.logaddexp(x, y), rel=1e-14, abs=1e-14)

    def test_add_neg_inf(self):
        assert log_add_exp(-math.inf, 3.0) == 3.0
        assert log_add_exp(2.0, -math.inf) == 2.0

    def test_add_no_overflow(self):
        assert log_add_exp(1e5, 1e5) == pytest.approx(1e5 + math.log(2.0))

    @given(st.floats(-700, 700), st.floats(0.0, 50.0))
    def test_sub_inverts_add(self, x, gap):
        y = x - gap - 1e-3
        assert log_sub_exp(log_add_exp(x, y), y) == pytest.approx(x, rel=1e-9, abs=1e-9)

    def test_sub_order(self):
        with pytest.raises(DomainError):
            log_sub_exp(0.0, 1.0)

    def test_log1m_exp(self):
        assert log1m_exp(0.0) == -math.inf
        assert log1m_exp(-1e-20) == pytest.approx(math.log(1e-20), rel=1e-12)
        assert log1m_exp(-50.0) == pytest.approx(-math.exp(-50.0), rel=1e-12)
        with pytest.raises(DomainError):
            log1m_exp(0.1)
