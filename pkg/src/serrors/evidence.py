"""Evidences (weighted likelihoods), their ratios, and classical p-values.

An evidence is the likelihood of the observed data averaged over a weight
measure on one hypothesis.  Every evidence is kept as a natural log so that
binomial likelihoods with N around 1e8 stay representable; ratios are
differences of logs and are exponentiated only for reporting.

Normal-family functions accept a :class:`NormalSummary` whose ``mean`` is a
numpy array and then evaluate elementwise.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .hypotheses import CountSummary, NormalSummary
from .special import (
    _STIRLING_MIN,
    _log1p_minus_t,
    _stirling_remainder,
    log_add_exp,
    log_beta,
    log_binomial_coefficient,
    normal_log_interval_mass,
    normal_log_tail,
    regularized_incomplete_beta,
)
from .weights import BetaWeight, ImproperWeight, NormalWeight, PointMass, TwoPointMass, Uniform

__all__ = [
    "LogEvidence",
    "LARGE_POSTERIOR_SIZE",
    "log_likelihood_ratio_simple_normal",
    "log_evidence_normal",
    "log_evidence_binomial",
    "log_evidence_ratio",
    "evidence_ratio_freeman",
    "log_evidence_ratio_freeman",
    "log_ratio_two_sided_intrinsic",
    "evidence_ratio_two_sided_intrinsic",
    "log_ratio_two_point",
    "evidence_ratio_two_point",
    "two_point_rejects",
    "indifference_posterior_odds_normal",
    "log_indifference_odds_normal",
    "indifference_posterior_odds_binomial",
    "beta_interval_log_masses",
    "log_indifference_odds_binomial",
    "posterior_null_probability",
    "pvalue_binomial_tail",
    "pvalue_negative_binomial_tail",
    "pvalue_two_sided_binomial",
    "pvalue_two_sided_binomial_exact",
    "pvalue_two_sided_normal",
]

_LOG_2PI = math.log(2.0 * math.pi)

# Beta posteriors with a + b above this use a normal approximation for
# interval masses; the continued fraction is slow and no more accurate there.
LARGE_POSTERIOR_SIZE = 1e6


@dataclass(frozen=True)
class LogEvidence:
    log_value: float
    hypothesis: int

    @property
    def value(self):
        return math.exp(self.log_value)


def log_evidence_ratio(e0, e1):
    """ln(evidence0 / evidence1)."""
    return e0.log_value - e1.log_value


# ---------------------------------------------------------------------------
# normal mean, known variance


def _normal_logpdf(x, mean, var):
    return -0.5 * (x - mean) ** 2 / var - 0.5 * (_LOG_2PI + np.log(var))


def log_likelihood_ratio_simple_normal(data: NormalSummary, theta0, theta1):
    """ln f(y | theta0) / f(y | theta1) for two point hypotheses."""
    if theta0 == theta1:
        raise DomainError("simple hypotheses coincide (theta0 == theta1)")
    precision = data.n / data.sigma**2
    return precision * (theta1 - theta0) * ((theta0 + theta1) / 2.0 - data.mean)


def _log_uniform_normal(ybar, se, lo, hi):
    log_in, _ = normal_log_interval_mass((lo - ybar) / se, (hi - ybar) / se)
    return log_in - math.log(hi - lo)


def log_evidence_normal(data: NormalSummary, weight, hypothesis=0):
    """Evidence for the sample mean under ``weight``.

    The sample mean is sufficient, so its N(theta, sigma^2/n) density is
    used as the likelihood.
    """
    var = data.sigma**2 / data.n
    y = data.mean
    if isinstance(weight, PointMass):
        out = _normal_logpdf(y, weight.value, var)
    elif isinstance(weight, TwoPointMass):
        lo, hi = weight.support()
        out = math.log(0.5) + np.logaddexp(
            _normal_logpdf(y, lo, var), _normal_logpdf(y, hi, var)
        )
    elif isinstance(weight, NormalWeight):
        out = _normal_logpdf(y, weight.mean, var + weight.variance)
    elif isinstance(weight, Uniform):
        se = math.sqrt(var)
        f = np.vectorize(lambda v: _log_uniform_normal(v, se, weight.lo, weight.hi))
        out = f(y)
        if np.ndim(out) == 0:
            out = float(out)
    elif isinstance(weight, ImproperWeight):
        raise DomainError("improper weights have no standalone evidence")
    else:
        raise DomainError(f"weight {weight!r} is not supported for the normal family")
    return LogEvidence(out, hypothesis)


def log_ratio_two_sided_intrinsic(data: NormalSummary, theta0):
    """ln of N(ybar | theta0, s^2/n) / N(ybar | theta0, s^2 (2 + 1/n)).

    Point null against the intrinsic weight N(theta0, 2 s^2).
    """
    n, s2 = data.n, data.sigma**2
    spread = n * (2.0 + 1.0 / n)
    d2 = (data.mean - theta0) ** 2
    return 0.5 * np.log(spread) - 0.5 * d2 * (n / s2 - 1.0 / (s2 * (2.0 + 1.0 / n)))


def evidence_ratio_two_sided_intrinsic(data: NormalSummary, theta0):
    n, s2 = data.n, data.sigma**2
    spread = n * (2.0 + 1.0 / n)
    d2 = (data.mean - theta0) ** 2
    return np.sqrt(spread) * np.exp(-0.5 * d2 * (n / s2 - 1.0 / (s2 * (2.0 + 1.0 / n))))


def log_ratio_two_point(data: NormalSummary, theta0, delta):
    """ln of the point null against half-masses at ``theta0 +/- delta``."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    num = log_evidence_normal(data, PointMass(theta0)).log_value
    den = log_evidence_normal(data, TwoPointMass(theta0, delta)).log_value
    return num - den


def evidence_ratio_two_point(data: NormalSummary, theta0, delta):
    return np.exp(log_ratio_two_point(data, theta0, delta))


def two_point_rejects(data: NormalSummary, theta0, delta, r):
    """Decision of the two-point test written as a sum of exponentials.

    Rejects when
    exp(-(n d / 2 s^2)[d - 2(ybar - theta0)]) + exp(-(n d / 2 s^2)[d + 2(ybar - theta0)]) > 2 / r.
    """
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    k = data.n * delta / (2.0 * data.sigma**2)
    dev = data.mean - theta0
    # Compared on the log scale so large n does not overflow.
    lhs = np.logaddexp(-k * (delta - 2.0 * dev), -k * (delta + 2.0 * dev))
    return lhs > math.log(2.0 / r)


def _intrinsic_posterior(ybar, n, sigma, theta0):
    s2 = sigma * sigma
    precision = n / s2 + 1.0 / (2.0 * s2)
    var = 1.0 / precision
    mean = var * (n * ybar / s2 + theta0 / (2.0 * s2))
    return mean, math.sqrt(var)


def _log_odds_normal_scalar(ybar, n, sigma, theta0, delta):
    m, s = _intrinsic_posterior(ybar, n, sigma, theta0)
    log_in, log_out = normal_log_interval_mass((theta0 - delta - m) / s, (theta0 + delta - m) / s)
    return log_in - log_out


_log_odds_normal_vec = np.vectorize(_log_odds_normal_scalar, otypes=[float])


def log_indifference_odds_normal(data: NormalSummary, theta0, delta):
    """ln P(|theta - theta0| <= delta | y) / P(|theta - theta0| > delta | y).

    The posterior comes from the intrinsic weight N(theta0, 2 sigma^2)
    placed over the whole real line.
    """
    if not delta > 0:
        raise DomainError(f"indifference half-width must be positive, got {delta!r}")
    if np.ndim(data.mean) == 0:
        return _log_odds_normal_scalar(float(data.mean), data.n, data.sigma, theta0, delta)
    return _log_odds_normal_vec(data.mean, data.n, data.sigma, theta0, delta)


def indifference_posterior_odds_normal(data: NormalSummary, theta0, delta, r):
    """Posterior odds of the indifference band and the decision against ``r``.

    Returns ``(odds, reject)`` where ``reject`` is ``odds < r``.
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    log_odds = log_indifference_odds_normal(data, theta0, delta)
    with np.errstate(over="ignore"):  # odds beyond 1e308 are reported as inf
        odds = np.exp(log_odds)
    return odds, log_odds < math.log(r)


# ---------------------------------------------------------------------------
# Bernoulli counts


def _log_constant(data: CountSummary, constant):
    if constant is None or constant == "none":
        return 0.0
    if constant == "binomial":
        return log_binomial_coefficient(data.trials, data.successes)
    if constant == "negative_binomial":
        # Stopped at the last failure: C(S + F - 1, S).
        if data.failures < 1:
            raise DomainError("negative-binomial stopping needs at least one failure")
        return log_binomial_coefficient(data.trials - 1, data.successes)
    raise DomainError(f"unknown likelihood constant {constant!r}")


def _log_bernoulli(theta, s, f):
    if theta == 0.0:
        return 0.0 if s == 0 else -math.inf
    if theta == 1.0:
        return 0.0 if f == 0 else -math.inf
    return s * math.log(theta) + f * math.log1p(-theta)


def _beta_interval_mass_exact(lo, hi, a, b):
    """Log Beta(a, b) masses inside and outside [lo, hi], by incomplete beta."""
    below = regularized_incomplete_beta(lo, a, b)
    above = regularized_incomplete_beta(1.0 - hi, b, a)
    outside = below + above
    if outside < 0.5:
        inside = 1.0 - outside
    elif hi <= a / (a + b):
        inside = regularized_incomplete_beta(hi, a, b) - below
    else:
        inside = regularized_incomplete_beta(1.0 - lo, b, a) - above
    log_in = math.log(inside) if inside > 0 else -math.inf
    log_out = math.log(outside) if outside > 0 else -math.inf
    return log_in, log_out


def _beta_interval_mass_normal(lo, hi, a, b):
    """Same masses from the normal approximation to Beta(a, b)."""
    total = a + b
    mean = a / total
    sd = math.sqrt(a * b / (total * total * (total + 1.0)))
    return normal_log_interval_mass((lo - mean) / sd, (hi - mean) / sd)


def beta_interval_log_masses(lo, hi, a, b, method="auto"):
    """``(log_inside, log_outside)`` for Beta(a, b) and the interval [lo, hi].

    ``method`` is ``"exact"``, ``"normal"`` or ``"auto"`` (normal once
    ``a + b`` exceeds :data:`LARGE_POSTERIOR_SIZE`).
    """
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    if lo >= hi:
        return -math.inf, 0.0
    if method == "auto":
        method = "normal" if a + b > LARGE_POSTERIOR_SIZE else "exact"
    if method == "exact":
        return _beta_interval_mass_exact(lo, hi, a, b)
    if method == "normal":
        return _beta_interval_mass_normal(lo, hi, a, b)
    raise DomainError(f"unknown method {method!r}")


def log_evidence_binomial(data: CountSummary, weight, constant="binomial", hypothesis=0):
    """ln of the integral of theta^S (1 - theta)^(N - S) w(theta), plus a constant.

    ``constant`` selects the sampling-plan coefficient: ``"binomial"``
    (N fixed in advance), ``"negative_binomial"`` (stop at the last failure)
    or ``None``.  It cancels from any ratio of two evidences on the same data.
    """
    s, f = data.successes, data.failures
    c = _log_constant(data, constant)
    if isinstance(weight, PointMass):
        if not 0.0 <= weight.value <= 1.0:
            raise DomainError(f"point mass {weight.value} outside [0, 1]")
        return LogEvidence(c + _log_bernoulli(weight.value, s, f), hypothesis)
    if isinstance(weight, TwoPointMass):
        lo, hi = weight.support()
        if lo < 0.0 or hi > 1.0:
            raise DomainError(f"two-point support {lo, hi} outside [0, 1]")
        out = log_add_exp(_log_bernoulli(lo, s, f), _log_bernoulli(hi, s, f)) + math.log(0.5)
        return LogEvidence(c + out, hypothesis)
    if isinstance(weight, BetaWeight):
        out = log_beta(s + weight.a, f + weight.b) - log_beta(weight.a, weight.b)
        return LogEvidence(c + out, hypothesis)
    if isinstance(weight, Uniform):
        if weight.lo < 0.0 or weight.hi > 1.0:
            raise DomainError(f"uniform support ({weight.lo}, {weight.hi}) outside [0, 1]")
        log_mass, _ = beta_interval_log_masses(weight.lo, weight.hi, s + 1.0, f + 1.0)
        out = log_beta(s + 1.0, f + 1.0) + log_mass - math.log(weight.hi - weight.lo)
        return LogEvidence(c + out, hypothesis)
    raise DomainError(f"weight {weight!r} is not supported for Bernoulli counts")


def log_evidence_ratio_freeman(s, N):
    """ln of f(s | 1/2) over the Jeffreys-weighted evidence.

    Equals ln(pi) + N ln(1/2) - ln B(s + 1/2, N - s + 1/2).
    """
    CountSummary(s, N)
    a, b, c = s + 0.5, N - s + 0.5, N + 1.0
    u = (2.0 * s - N) / c
    if min(a, b) < _STIRLING_MIN or abs(u) > 0.5:
        return math.log(math.pi) + N * math.log(0.5) - log_beta(a, b)
    # Stirling form written around s = N/2: the N ln 2 terms cancel exactly,
    # which keeps full precision when N is in the hundreds of millions.
    spread = s * _log1p_minus_t(u) + (N - s) * _log1p_minus_t(-u) + u * (2.0 * s - N)
    corr = _stirling_remainder(a) + _stirling_remainder(b) - _stirling_remainder(c)
    return 0.5 * math.log(0.5 * math.pi) + 0.5 * math.log(c) - spread - corr


def evidence_ratio_freeman(s, N):
    return math.exp(log_evidence_ratio_freeman(s, N))


def log_indifference_odds_binomial(data: CountSummary, delta, method="auto"):
    """ln of the posterior odds of 1/2 - delta < theta < 1/2 + delta.

    The posterior is Beta(S + 1/2, N - S + 1/2) from the Jeffreys weight.
    """
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 1/2), got {delta!r}")
    a = data.successes + 0.5
    b = data.failures + 0.5
    log_in, log_out = beta_interval_log_masses(0.5 - delta, 0.5 + delta, a, b, method)
    return log_in - log_out


def indifference_posterior_odds_binomial(data: CountSummary, delta, method="auto"):
    return math.exp(log_indifference_odds_binomial(data, delta, method))


# ---------------------------------------------------------------------------


def posterior_null_probability(log_ratio_01, prior_null):
    """P(H0 | y) = [1 + (1 - pi0)/pi0 * exp(-log_ratio_01)]^-1."""
    if not 0.0 < prior_null < 1.0:
        raise DomainError(f"prior probability must lie in (0, 1), got {prior_null!r}")
    x = log_ratio_01 + math.log(prior_null) - math.log1p(-prior_null)
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


# ---------------------------------------------------------------------------
# classical tail probabilities, for comparison output only


def pvalue_binomial_tail(successes, trials, theta=0.5):
    """P(X >= successes) for X ~ Binomial(trials, theta)."""
    CountSummary(successes, trials)
    if successes == 0:
        return 1.0
    return regularized_incomplete_beta(theta, successes, trials - successes + 1)


def pvalue_negative_binomial_tail(successes, failures, theta=0.5):
    """P(at least ``successes`` successes before the ``failures``-th failure).

    Complement of the finite sum over 0..successes-1.
    """
    if failures < 1 or successes < 0:
        raise DomainError("need failures >= 1 and successes >= 0")
    log_q = failures * math.log1p(-theta)
    log_t = math.log(theta)
    terms = [
        math.exp(log_binomial_coefficient(k + failures - 1, k) + k * log_t + log_q)
        for k in range(successes)
    ]
    return max(0.0, 1.0 - math.fsum(terms))


def pvalue_two_sided_binomial(successes, trials):
    """Two-sided p-value for theta = 1/2, continuity-corrected normal approximation."""
    CountSummary(successes, trials)
    if trials == 0:
        return 1.0
    dev = abs(successes - trials / 2.0) - 0.5
    if dev <= 0:
        return 1.0
    z = dev / (0.5 * math.sqrt(trials))
    return min(1.0, 2.0 * math.exp(normal_log_tail(z)))


def pvalue_two_sided_binomial_exact(successes, trials):
    """Exact two-sided p-value for theta = 1/2 (doubled smaller tail)."""
    CountSummary(successes, trials)
    upper = pvalue_binomial_tail(successes, trials)
    lower = pvalue_binomial_tail(trials - successes, trials)
    return min(1.0, 2.0 * min(upper, lower))


def pvalue_two_sided_normal(data: NormalSummary, theta0):
    """2 (1 - Phi(|ybar - theta0| sqrt(n) / sigma))."""
    z = abs(data.mean - theta0) / data.standard_error
    return min(1.0, 2.0 * math.exp(normal_log_tail(z)))
