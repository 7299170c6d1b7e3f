"""Simple-vs-simple normal designs under both testing paradigms.

The classical design fixes alpha, picks n for a target beta, and keeps the
cutoff at z_{1-alpha} standard errors from theta0 whatever sample size is
finally collected.  The weighted-error rule instead keeps the likelihood
ratio threshold r = b/a fixed, so its cutoff moves towards the midpoint of
the two hypotheses and both error rates shrink with n.  A design implies the
r that makes the two rules agree at the designed sample size.
"""

from dataclasses import dataclass
import math

from .decision import ErrorWeights
from .errors import DomainError
from .special import normal_log_cdf, normal_log_tail, normal_pdf, normal_quantile

__all__ = [
    "DesignSpec",
    "DesignResult",
    "ErrorProfile",
    "design_simple_normal",
    "implicit_weight_ratio",
    "log_implicit_weight_ratio",
    "degroot_threshold",
    "degroot_standardized_cutoff",
    "error_profile_fixed_alpha",
    "error_profile_degroot",
    "adaptive_alpha_curve",
    "EXAMPLE1",
]


@dataclass(frozen=True)
class DesignSpec:
    theta0: float
    theta1: float
    sigma: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.theta0 == self.theta1:
            raise DomainError("theta0 and theta1 must differ")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DomainError(f"{name} target must lie in (0, 1), got {v!r}")

    @property
    def direction(self):
        """+1 if H0 is rejected for large means, -1 for small ones."""
        return 1.0 if self.theta1 > self.theta0 else -1.0

    @property
    def gap(self):
        return abs(self.theta1 - self.theta0)


# Normal data with sigma = 3, H0: theta = -1 against H1: theta = 1,
# designed for alpha = 0.05 and beta = 0.1.
EXAMPLE1 = DesignSpec(theta0=-1.0, theta1=1.0, sigma=3.0, alpha=0.05, beta=0.1)


@dataclass(frozen=True)
class DesignResult:
    n_real: float
    n: int
    beta_achieved: float
    threshold: float
    implicit_ratio: float
    # ln of implicit_ratio; still finite when the ratio itself overflows.
    log_implicit_ratio: float = math.nan


@dataclass(frozen=True)
class ErrorProfile:
    """Averaged Type I / Type II errors and ``serrors = a alpha + b beta``.

    Monte Carlo estimates carry binomial standard errors; exact profiles
    leave them at zero.
    """

    alpha: float
    beta: float
    serrors: float
    alpha_se: float = 0.0
    beta_se: float = 0.0
    trials: int = 0

    @classmethod
    def from_errors(cls, alpha, beta, weights=ErrorWeights(), **kw):
        return cls(alpha, beta, weights.serrors(alpha, beta), **kw)

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "serrors": self.serrors,
            "alpha_se": self.alpha_se,
            "beta_se": self.beta_se,
            "trials": self.trials,
        }


def _beta_fixed_alpha(n, spec):
    z = normal_quantile(1.0 - spec.alpha) - math.sqrt(n) * spec.gap / spec.sigma
    return math.exp(normal_log_cdf(z))


def design_simple_normal(spec: DesignSpec) -> DesignResult:
    """Classical one-sided design for a normal mean with known sigma.

    n_real = sigma^2 (z_{1-alpha} + z_{1-beta})^2 / (theta1 - theta0)^2,
    rounded up; the cutoff sits z_{1-alpha} standard errors beyond theta0.
    """
    z_alpha = normal_quantile(1.0 - spec.alpha)
    z_beta = normal_quantile(1.0 - spec.beta)
    if z_alpha + z_beta <= 0:
        raise DomainError("alpha + beta must be below 1 for a one-sided design")
    n_real = (spec.sigma * (z_alpha + z_beta) / spec.gap) ** 2
    n = math.ceil(n_real - 1e-12)
    threshold = spec.theta0 + spec.direction * z_alpha * spec.sigma / math.sqrt(n)
    partial = DesignResult(n_real, n, _beta_fixed_alpha(n, spec), threshold, math.nan)
    log_r = log_implicit_weight_ratio(partial, spec)
    return DesignResult(
        n_real, n, partial.beta_achieved, threshold, _exp_or_inf(log_r), log_r
    )


def _exp_or_inf(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def implicit_weight_ratio(result: DesignResult, spec: DesignSpec):
    """The b/a for which the weighted-error rule has the design's cutoff.

    r = exp((n / sigma^2)(theta1 - theta0)((theta0 + theta1)/2 - cutoff)).
    Returns inf when r is beyond the float range; see
    :func:`log_implicit_weight_ratio`.
    """
    return _exp_or_inf(log_implicit_weight_ratio(result, spec))


def log_implicit_weight_ratio(result: DesignResult, spec: DesignSpec):
    precision = result.n / spec.sigma**2
    mid = 0.5 * (spec.theta0 + spec.theta1)
    return precision * (spec.theta1 - spec.theta0) * (mid - result.threshold)


def degroot_threshold(n, spec: DesignSpec, r=None, log_r=None):
    """Cutoff on the sample mean where f(y|theta0)/f(y|theta1) equals r.

    Give either ``r`` or its natural log ``log_r``.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    if (r is None) == (log_r is None):
        raise DomainError("give exactly one of r and log_r")
    if log_r is None:
        if not 0 < r < math.inf:
            raise DomainError(f"r must be positive and finite, got {r!r}")
        log_r = math.log(r)
    mid = 0.5 * (spec.theta0 + spec.theta1)
    return mid - spec.sigma**2 * log_r / (n * (spec.theta1 - spec.theta0))


def degroot_standardized_cutoff(n, spec: DesignSpec, r):
    """The same rule on the z scale of the classical test.

    Rejects when (ybar - theta0) / (sigma / sqrt n) exceeds
    c / (sigma sqrt n) + sqrt(n) |theta1 - theta0| / (2 sigma), with
    c = -sigma^2 ln(r) / |theta1 - theta0|.  For theta = -1 vs 1 with sigma = 3 this is the
    familiar 2.07 / (sigma sqrt n) + sqrt(n) / sigma.
    """
    c = -(spec.sigma**2) * math.log(r) / spec.gap
    return c / (spec.sigma * math.sqrt(n)) + math.sqrt(n) * spec.gap / (2.0 * spec.sigma)


def error_profile_fixed_alpha(n, spec: DesignSpec, weights=ErrorWeights()):
    """Errors of the classical rule at sample size ``n`` (alpha held at target)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    return ErrorProfile.from_errors(spec.alpha, _beta_fixed_alpha(n, spec), weights)


def error_profile_degroot(n, spec: DesignSpec, r):
    """Errors of the fixed-r rule at sample size ``n``."""
    t = degroot_threshold(n, spec, r)
    se = spec.sigma / math.sqrt(n)
    s = spec.direction
    alpha = math.exp(normal_log_tail(s * (t - spec.theta0) / se))
    beta = math.exp(normal_log_cdf(s * (t - spec.theta1) / se))
    return ErrorProfile.from_errors(alpha, beta, ErrorWeights.from_ratio(r))


def adaptive_alpha_curve(n_grid, sigma):
    """Rows ``(n, exact, mills)`` of 1 - Phi(sqrt(n)/sigma) and phi(z)/z."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    rows = []
    for n in n_grid:
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n!r}")
        z = math.sqrt(n) / sigma
        rows.append((n, math.exp(normal_log_tail(z)), normal_pdf(z) / z))
    return rows
