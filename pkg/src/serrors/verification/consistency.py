"""Error rates of the two-sided normal tests as the sample size grows.

A test is consistent when its Type I error at theta0 and its Type II error
at any fixed alternative both go to zero.  All three weighted-error tests
reject exactly when |ybar - theta0| exceeds a cutoff c_n, so their errors
have closed forms once c_n is found by root finding on the test statistic;
the same rules can also be run through the Monte Carlo estimator.
"""

from dataclasses import dataclass
import math

from scipy.optimize import brentq

from ..errors import DomainError
from ..evidence import log_indifference_odds_normal, log_ratio_two_point, log_ratio_two_sided_intrinsic
from ..hypotheses import NormalSummary
from ..special import normal_cdf, normal_log_tail, normal_quantile
from ..weights import PointMass
from . import montecarlo as mc

__all__ = [
    "TESTS",
    "SweepSetting",
    "SweepRow",
    "rejection_cutoff",
    "pointwise_errors",
    "consistency_sweep",
    "sweep_is_consistent",
    "DEFAULT_GRID",
]

TESTS = ("intrinsic", "two_point", "indifference", "fixed_alpha")
DEFAULT_GRID = (10, 100, 1000, 10000)
CONSISTENCY_LEVEL = 1e-3


@dataclass(frozen=True)
class SweepSetting:
    """Shared parameters; ``alternative`` defaults to theta0 + 2 delta."""

    theta0: float = 0.0
    sigma: float = 3.0
    delta: float = 1.0
    r: float = 1.0
    alpha: float = 0.05
    alternative: float = None

    @property
    def theta_alt(self):
        return self.theta0 + 2.0 * self.delta if self.alternative is None else self.alternative


@dataclass(frozen=True)
class SweepRow:
    test: str
    n: int
    alpha: float
    beta: float
    alpha_se: float = 0.0
    beta_se: float = 0.0


def _log_statistic(test, n, setting):
    s = setting

    def stat(dev):
        data = NormalSummary(s.theta0 + dev, n, s.sigma)
        if test == "intrinsic":
            return log_ratio_two_sided_intrinsic(data, s.theta0)
        if test == "two_point":
            return log_ratio_two_point(data, s.theta0, s.delta)
        if test == "indifference":
            return log_indifference_odds_normal(data, s.theta0, s.delta)
        raise DomainError(f"unknown test {test!r}")

    return stat


def rejection_cutoff(test, n, setting=SweepSetting()):
    """c_n such that the test rejects iff |ybar - theta0| > c_n."""
    stat = _log_statistic(test, n, setting)
    log_r = math.log(setting.r)
    g = lambda d: float(stat(d)) - log_r  # noqa: E731
    if g(0.0) < 0:
        return 0.0
    hi = setting.sigma / math.sqrt(n)
    while g(hi) >= 0:
        hi *= 2.0
        if hi > 1e6 * setting.sigma:
            return math.inf
    return brentq(g, 0.0, hi, xtol=1e-14, rtol=1e-14)


def pointwise_errors(test, n, setting=SweepSetting()):
    """Exact ``(alpha at theta0, beta at the alternative)``."""
    se = setting.sigma / math.sqrt(n)
    shift = (setting.theta_alt - setting.theta0) / se
    if test == "fixed_alpha":
        z = normal_quantile(1.0 - setting.alpha)
        return setting.alpha, normal_cdf(z - abs(shift))
    c = rejection_cutoff(test, n, setting) / se
    alpha = 2.0 * math.exp(normal_log_tail(c))
    # P(|Z + shift| <= c), in whichever form avoids cancellation.
    if abs(shift) > c:
        beta = math.exp(normal_log_tail(abs(shift) - c)) - math.exp(normal_log_tail(abs(shift) + c))
    else:
        beta = normal_cdf(c - shift) - normal_cdf(-c - shift)
    return min(alpha, 1.0), max(beta, 0.0)


def _mc_rule(test, n, s):
    if test == "intrinsic":
        return mc.intrinsic_rule(n, s.sigma, s.theta0, s.r)
    if test == "two_point":
        return mc.two_point_rule(n, s.sigma, s.theta0, s.delta, s.r)
    if test == "indifference":
        return mc.indifference_rule(n, s.sigma, s.theta0, s.delta, s.r)
    if test == "fixed_alpha":
        return mc.fixed_alpha_rule(n, s.sigma, s.theta0, s.theta_alt, s.alpha)
    raise DomainError(f"unknown test {test!r}")


def consistency_sweep(test, n_grid=DEFAULT_GRID, setting=SweepSetting(), method="exact", config=None):
    """One :class:`SweepRow` per sample size; ``method`` is "exact" or "mc"."""
    if test not in TESTS:
        raise DomainError(f"unknown test {test!r}; choose from {TESTS}")
    rows = []
    for n in n_grid:
        if method == "exact":
            a, b = pointwise_errors(test, n, setting)
            rows.append(SweepRow(test, n, a, b))
        elif method == "mc":
            prof = mc.mc_error_profile(
                _mc_rule(test, n, setting),
                mc.NormalMeanModel(n, setting.sigma),
                PointMass(setting.theta0),
                PointMass(setting.theta_alt),
                config or mc.MonteCarloConfig(),
            )
            rows.append(SweepRow(test, n, prof.alpha, prof.beta, prof.alpha_se, prof.beta_se))
        else:
            raise DomainError(f"unknown method {method!r}")
    return rows


def sweep_is_consistent(rows, level=CONSISTENCY_LEVEL):
    """Both errors below ``level`` at the last grid point and non-increasing
    over the second half of the grid."""
    tail = rows[len(rows) // 2 :]
    for key in ("alpha", "beta"):
        vals = [getattr(r, key) for r in tail]
        if any(b > a + 1e-15 for a, b in zip(vals, vals[1:])):
            return False
    return rows[-1].alpha < level and rows[-1].beta < level
