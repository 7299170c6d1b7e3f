import math

import pytest
from hypothesis import given, settings, strategies as st

from serrors.errors import DomainError
from serrors.verification.matching import (
    FAMILIES,
    closed_form_predictive,
    predictive_matching_jeffreys_normal,
    predictive_matching_location_scale,
)


@pytest.mark.parametrize("family", sorted(FAMILIES))
@pytest.mark.parametrize("x1,x2", [(0.0, 1.0), (-3.0, 2.5), (10.0, 10.01), (-100.0, 400.0)])
def test_location_scale_closed_form(family, x1, x2):
    got = predictive_matching_location_scale(family, x1, x2)
    assert got == pytest.approx(closed_form_predictive(x1, x2), rel=1e-6)


@settings(max_examples=10, deadline=None)
@given(st.floats(-50, 50), st.floats(0.01, 50))
def test_normal_family_any_pair(x1, gap):
    got = predictive_matching_location_scale("normal", x1, x1 + gap)
    assert got == pytest.approx(1 / (2 * gap), rel=1e-6)


@pytest.mark.parametrize("x,mu0", [(1.0, 0.0), (-2.0, 3.0), (0.001, 0.0)])
def test_jeffreys_normal_marginals_match(x, mu0):
    m0, m1 = predictive_matching_jeffreys_normal(x, mu0)
    assert m0 == pytest.approx(1 / (2 * abs(x - mu0)), rel=1e-8)
    assert m1 == pytest.approx(m0, rel=1e-6)


@pytest.mark.parametrize("c", [0.1, 3.0, 1000.0])
def test_marginals_scale_inversely(c):
    m0, m1 = predictive_matching_jeffreys_normal(0.7, 0.2)
    n0, n1 = predictive_matching_jeffreys_normal(0.7 * c, 0.2 * c)
    assert n0 == pytest.approx(m0 / c, rel=1e-8)
    assert n1 == pytest.approx(m1 / c, rel=1e-6)


def test_degenerate_inputs():
    with pytest.raises(DomainError):
        predictive_matching_location_scale("normal", 1.0, 1.0)
    with pytest.raises(DomainError):
        predictive_matching_location_scale("laplace", 0.0, 1.0)
    with pytest.raises(DomainError):
        predictive_matching_jeffreys_normal(2.0, 2.0)
