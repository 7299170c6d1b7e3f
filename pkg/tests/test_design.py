import math

import pytest
from hypothesis import given, strategies as st
from scipy import stats

from serrors.decision import ErrorWeights
from serrors.design import (
    EXAMPLE1,
    DesignResult,
    DesignSpec,
    adaptive_alpha_curve,
    degroot_standardized_cutoff,
    degroot_threshold,
    design_simple_normal,
    error_profile_degroot,
    error_profile_fixed_alpha,
    implicit_weight_ratio,
)
from serrors.errors import DomainError

# scipy.stats.norm quantiles/cdfs, frozen
N_REAL = 19.268656539002953
BETA_N20 = 0.09068146248885565
THRESHOLD = 0.10340135687017195
IMPLICIT_R = 0.6315604697158487


def test_example1_design_against_oracle():
    res = design_simple_normal(EXAMPLE1)
    assert res.n_real == pytest.approx(N_REAL, rel=1e-13)
    assert res.n == 20
    assert res.beta_achieved == pytest.approx(BETA_N20, rel=1e-12)
    assert res.threshold == pytest.approx(THRESHOLD, abs=1e-14)
    assert res.implicit_ratio == pytest.approx(IMPLICIT_R, rel=1e-12)
    assert res.log_implicit_ratio == pytest.approx(math.log(IMPLICIT_R), rel=1e-12)


def test_example1_printed_values():
    res = design_simple_normal(EXAMPLE1)
    assert res.beta_achieved == pytest.approx(0.091, abs=0.001)
    assert res.threshold == pytest.approx(0.1034, abs=5e-4)
    assert res.implicit_ratio == pytest.approx(0.63, abs=0.005)


def test_rounded_quantiles_give_printed_n():
    # the printed 19.25 comes from z values rounded to 1.645 and 1.28
    assert (3 * (1.645 + 1.28) / 2) ** 2 == pytest.approx(19.25, abs=0.01)


def test_closed_form_n():
    res = design_simple_normal(DesignSpec(0.0, 1.0, 1.0, 0.05, 0.1))
    oracle = (stats.norm.ppf(0.95) + stats.norm.ppf(0.9)) ** 2
    assert res.n_real == pytest.approx(oracle, rel=1e-13)
    assert res.n_real == pytest.approx(8.56, abs=0.01)


def test_symmetric_targets_put_threshold_at_midpoint():
    spec = DesignSpec(0.0, 2.0, 1.0, 0.1, 0.1)
    res = design_simple_normal(spec)
    # n is rounded up so the cutoff only approaches the midpoint
    assert abs(res.threshold - 1.0) < 0.1
    exact = DesignResult(res.n_real, res.n_real, 0.1, 1.0, math.nan)
    assert implicit_weight_ratio(exact, spec) == pytest.approx(1.0)


def test_mirrored_direction():
    up = design_simple_normal(DesignSpec(-1.0, 1.0, 3.0, 0.05, 0.1))
    down = design_simple_normal(DesignSpec(1.0, -1.0, 3.0, 0.05, 0.1))
    assert down.n == up.n
    assert down.threshold == pytest.approx(-up.threshold)
    assert down.implicit_ratio == pytest.approx(up.implicit_ratio)


@pytest.mark.parametrize("kw", [dict(theta1=-1.0), dict(sigma=0.0), dict(alpha=1.0), dict(beta=0.0)])
def test_invalid_specs(kw):
    base = dict(theta0=-1.0, theta1=1.0, sigma=3.0, alpha=0.05, beta=0.1) | kw
    with pytest.raises(DomainError):
        DesignSpec(**base)


def test_huge_implicit_ratio_saturates():
    # hypotheses 40 sigma apart: n = 1 and ln r is about 773
    res = design_simple_normal(DesignSpec(0.0, 5.0, 0.125, 0.25, 0.25))
    assert res.n == 1 and res.implicit_ratio == math.inf
    assert res.log_implicit_ratio == pytest.approx(773.02, abs=0.01)


def test_infeasible_targets():
    with pytest.raises(DomainError):
        design_simple_normal(DesignSpec(0.0, 1.0, 1.0, 0.6, 0.6))


@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(0.001, 0.4), st.floats(0.001, 0.4))
def test_round_trip(theta0, gap, sigma, alpha, beta):
    spec = DesignSpec(theta0, theta0 + gap, sigma, alpha, beta)
    res = design_simple_normal(spec)
    back = degroot_threshold(res.n, spec, log_r=res.log_implicit_ratio)
    assert back == pytest.approx(res.threshold, abs=1e-10 * (1 + abs(res.threshold)))
    assert res.beta_achieved <= beta + 1e-12
    assert res.n == math.ceil(res.n_real - 1e-12)


class TestDegroot:
    def test_example1_threshold(self):
        # the rounded r = 0.63 moves the cutoff by 5.6e-4; the unrounded r lands on it
        assert degroot_threshold(20, EXAMPLE1, 0.63) == pytest.approx(0.1034, abs=1e-3)
        assert degroot_threshold(20, EXAMPLE1, IMPLICIT_R) == pytest.approx(THRESHOLD, abs=1e-14)
        assert degroot_threshold(20, EXAMPLE1, 0.63) == pytest.approx(9 / 40 * -math.log(0.63), rel=1e-12)

    def test_tends_to_midpoint(self):
        cuts = [degroot_threshold(n, EXAMPLE1, IMPLICIT_R) for n in (10, 1000, 10**6)]
        assert cuts[0] > cuts[1] > cuts[2] > 0 and cuts[2] < 1e-5

    def test_even_ratio_is_midpoint(self):
        assert degroot_threshold(37, EXAMPLE1, 1.0) == 0.0

    @pytest.mark.parametrize("n", [1, 5, 20, 100, 1000])
    def test_standardized_form_agrees(self, n):
        sigma = EXAMPLE1.sigma
        z = (degroot_threshold(n, EXAMPLE1, IMPLICIT_R) + 1.0) / (sigma / math.sqrt(n))
        assert degroot_standardized_cutoff(n, EXAMPLE1, IMPLICIT_R) == pytest.approx(z, rel=1e-10)
        c = -(sigma**2) * math.log(IMPLICIT_R) / 2.0
        assert c == pytest.approx(2.07, abs=0.005)

    def test_invalid(self):
        with pytest.raises(DomainError):
            degroot_threshold(0, EXAMPLE1, 1.0)
        with pytest.raises(DomainError):
            degroot_threshold(5, EXAMPLE1, 0.0)
        with pytest.raises(DomainError):
            degroot_threshold(5, EXAMPLE1, 1.0, log_r=0.0)


class TestProfiles:
    def test_fixed_alpha_values(self):
        assert error_profile_fixed_alpha(100, EXAMPLE1).beta == pytest.approx(2.559299774642613e-7, rel=1e-9)
        assert error_profile_fixed_alpha(10, EXAMPLE1).beta == pytest.approx(0.32156339237120472, rel=1e-12)
        assert error_profile_fixed_alpha(20, EXAMPLE1).beta == pytest.approx(0.091, abs=0.001)

    def test_fixed_alpha_never_consistent(self):
        for n in (1, 10, 10**3, 10**6):
            assert error_profile_fixed_alpha(n, EXAMPLE1).alpha == 0.05

    def test_degroot_values(self):
        assert error_profile_degroot(100, EXAMPLE1, IMPLICIT_R).alpha == pytest.approx(3.341458667419154e-4, rel=1e-10)
        p20 = error_profile_degroot(20, EXAMPLE1, IMPLICIT_R)
        p100 = error_profile_degroot(100, EXAMPLE1, IMPLICIT_R)
        assert p20.alpha / p20.beta == pytest.approx(0.55138060886639072, rel=1e-10)
        assert p100.alpha / p100.beta == pytest.approx(0.60921867139810557, rel=1e-10)

    def test_degroot_against_scipy(self):
        n, r = 37, 0.4
        t = degroot_threshold(n, EXAMPLE1, r)
        se = 3.0 / math.sqrt(n)
        p = error_profile_degroot(n, EXAMPLE1, r)
        assert p.alpha == pytest.approx(stats.norm.sf(t, -1.0, se), rel=1e-12)
        assert p.beta == pytest.approx(stats.norm.cdf(t, 1.0, se), rel=1e-12)
        assert p.serrors == pytest.approx(p.alpha + r * p.beta, rel=1e-14)

    def test_degroot_consistent(self):
        prev = None
        for n in (50, 100, 500, 1000, 5000):
            p = error_profile_degroot(n, EXAMPLE1, IMPLICIT_R)
            if prev:
                assert p.alpha < prev.alpha and p.beta < prev.beta
            prev = p
        assert prev.alpha < 1e-100 and prev.beta < 1e-100

    @given(st.integers(1, 10_000), st.floats(0.01, 100))
    def test_degroot_minimizes_serrors(self, n, r):
        p = error_profile_degroot(n, EXAMPLE1, r)
        # moving the cutoff either way cannot lower a*alpha + b*beta
        t = degroot_threshold(n, EXAMPLE1, r)
        se = 3.0 / math.sqrt(n)
        for shift in (-0.5 * se, 0.5 * se):
            alt = stats.norm.sf(t + shift, -1.0, se) + r * stats.norm.cdf(t + shift, 1.0, se)
            assert p.serrors <= alt * (1 + 1e-9) + 1e-300

    def test_profile_weights(self):
        p = error_profile_fixed_alpha(20, EXAMPLE1, ErrorWeights(2.0, 1.0))
        assert p.serrors == pytest.approx(2 * 0.05 + p.beta)


class TestAdaptiveAlpha:
    def test_columns(self):
        rows = adaptive_alpha_curve([1, 10, 100, 1000], 3.0)
        for n, exact, mills in rows:
            assert exact == pytest.approx(stats.norm.sf(math.sqrt(n) / 3.0), rel=1e-12)
        assert rows[2][1] == pytest.approx(4.3e-4, rel=0.02)

    def test_mills_accuracy_beyond_three(self):
        rows = adaptive_alpha_curve(range(82, 2000, 37), 3.0)
        for n, exact, mills in rows:
            assert abs(mills - exact) / exact < 0.10

    def test_mills_decreasing(self):
        mills = [m for _, _, m in adaptive_alpha_curve(range(1, 500), 2.0)]
        assert all(a > b for a, b in zip(mills, mills[1:]))

    def test_invalid(self):
        with pytest.raises(DomainError):
            adaptive_alpha_curve([0], 1.0)
        with pytest.raises(DomainError):
            adaptive_alpha_curve([1], 0.0)
