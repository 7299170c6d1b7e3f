"""Exhaustive check of the pointwise optimal rule on finite sample spaces.

On a sample space with K outcomes, a test is just a subset R of outcomes to
reject on, and

    a * alpha(R) + b * beta(R) = b + sum over y in R of (a w0(y) - b w1(y)).

Enumerating all 2^K subsets gives the true minimum without using that
identity, which makes it an independent oracle for the pointwise rule.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from ..decision import ErrorWeights
from ..design import ErrorProfile
from ..errors import DomainError

__all__ = [
    "DiscreteTestProblem",
    "MAX_ENUMERATION_SIZE",
    "brute_force_optimal_test",
    "lemma1_rule_discrete",
    "exact_profile",
    "serrors_of",
    "random_discrete_problem",
    "binomial_problem",
    "Lemma2Report",
    "check_lemma2",
]

MAX_ENUMERATION_SIZE = 24
_CHUNK = 1 << 18


@dataclass(frozen=True)
class DiscreteTestProblem:
    """Log evidences of both hypotheses over K outcomes, plus the weights."""

    log_evidence0: tuple
    log_evidence1: tuple
    weights: ErrorWeights = ErrorWeights()
    # Linear-scale copies; kept exact when built from probabilities.
    _w0: tuple = field(default=None, repr=False, compare=False)
    _w1: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        e0 = tuple(float(v) for v in self.log_evidence0)
        e1 = tuple(float(v) for v in self.log_evidence1)
        if len(e0) != len(e1) or not e0:
            raise DomainError("evidence vectors must be non-empty and of equal length")
        object.__setattr__(self, "log_evidence0", e0)
        object.__setattr__(self, "log_evidence1", e1)
        if self._w0 is None:
            object.__setattr__(self, "_w0", tuple(math.exp(v) for v in e0))
            object.__setattr__(self, "_w1", tuple(math.exp(v) for v in e1))
        for name, w in (("evidence0", self._w0), ("evidence1", self._w1)):
            total = math.fsum(w)
            if abs(total - 1.0) > 1e-9:
                raise DomainError(f"{name} sums to {total}, not 1")

    @classmethod
    def from_probabilities(cls, p0, p1, weights=ErrorWeights()):
        p0 = tuple(float(v) for v in p0)
        p1 = tuple(float(v) for v in p1)
        log = lambda v: math.log(v) if v > 0 else -math.inf  # noqa: E731
        return cls(tuple(map(log, p0)), tuple(map(log, p1)), weights, p0, p1)

    @property
    def size(self):
        return len(self.log_evidence0)

    @property
    def evidence0(self):
        return np.asarray(self._w0)

    @property
    def evidence1(self):
        return np.asarray(self._w1)


def exact_profile(problem: DiscreteTestProblem, rejection_set):
    """Exact alpha, beta and serrors of the test rejecting on ``rejection_set``."""
    reject = set(rejection_set)
    w0 = problem.evidence0
    w1 = problem.evidence1
    alpha = math.fsum(w0[i] for i in reject)
    beta = math.fsum(w1[i] for i in range(problem.size) if i not in reject)
    return ErrorProfile.from_errors(alpha, beta, problem.weights)


def serrors_of(problem: DiscreteTestProblem, rejection_set):
    return exact_profile(problem, rejection_set).serrors


def _mask_to_set(mask, k):
    return tuple(i for i in range(k) if mask >> i & 1)


def brute_force_optimal_test(problem: DiscreteTestProblem, tie_tolerance=1e-12):
    """Minimize serrors over every one of the 2^K rejection sets.

    Returns ``(rejection_set, min_serrors)``.  Sets whose serrors are within
    ``tie_tolerance`` of the minimum count as tied, and the lexicographically
    smallest sorted tuple among them is returned.
    """
    k = problem.size
    if k > MAX_ENUMERATION_SIZE:
        raise DomainError(
            f"exhaustive search limited to K <= {MAX_ENUMERATION_SIZE} outcomes, got K={k}"
        )
    a, b = problem.weights.a, problem.weights.b
    w0, w1 = problem.evidence0, problem.evidence1
    bits = np.arange(k)
    total = 1 << k
    values = np.empty(total)
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        member = (masks[:, None] >> bits) & 1
        # Direct definition: a * alpha + b * beta, no rearrangement.
        alpha = member @ w0
        beta = (1 - member) @ w1
        values[start : start + len(masks)] = a * alpha + b * beta
    best = values.min()
    tied = np.flatnonzero(values <= best + tie_tolerance)
    chosen = min(_mask_to_set(int(m), k) for m in tied)
    return chosen, serrors_of(problem, chosen)


def lemma1_rule_discrete(problem: DiscreteTestProblem):
    """Reject on every outcome where a * w0(y) < b * w1(y); ties accept."""
    la = math.log(problem.weights.a)
    lb = math.log(problem.weights.b)
    return tuple(
        i
        for i, (e0, e1) in enumerate(zip(problem.log_evidence0, problem.log_evidence1))
        if la + e0 < lb + e1
    )


def random_discrete_problem(rng, size, concentration=1.0):
    """Dirichlet-distributed evidences and log-uniform weights in [1e-2, 1e2]."""
    w0 = rng.dirichlet(np.full(size, concentration))
    w1 = rng.dirichlet(np.full(size, concentration))
    w0 = np.maximum(w0, 1e-300)
    w1 = np.maximum(w1, 1e-300)
    w0 /= w0.sum()
    w1 /= w1.sum()
    a, b = np.exp(rng.uniform(-math.log(100), math.log(100), 2))
    return DiscreteTestProblem.from_probabilities(w0, w1, ErrorWeights(float(a), float(b)))


def binomial_problem(trials, theta0, theta1, weights=ErrorWeights()):
    """Simple-vs-simple test on S ~ Binomial(trials, theta)."""

    def pmf(theta):
        return [math.comb(trials, s) * theta**s * (1.0 - theta) ** (trials - s) for s in range(trials + 1)]

    return DiscreteTestProblem.from_probabilities(pmf(theta0), pmf(theta1), weights)


@dataclass(frozen=True)
class Lemma2Report:
    r: float
    alpha: float
    beta: float
    ratio: float
    power_bound_margin: float
    size_bound_margin: float
    power_bound_slack: float
    size_bound_slack: float
    power_bound_holds: bool
    size_bound_holds: bool

    @property
    def holds(self):
        return self.power_bound_holds and self.size_bound_holds

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"holds": self.holds}


def check_lemma2(profile: ErrorProfile, r, n_se=3.0, rounding=0.0):
    """Check alpha / (1 - beta) <= r and alpha <= r for an optimal rule's errors.

    The first inequality is tested as ``alpha - r (1 - beta) <= slack`` so a
    zero-power rule does not divide by zero.  ``slack`` is ``n_se`` standard
    errors of the left side (zero for exact profiles) plus ``rounding``
    times the size of the terms, which covers exact profiles whose pmfs sum
    to one only up to floating-point rounding.  Margins are positive when the
    inequality holds.
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    power = 1.0 - profile.beta
    ratio = profile.alpha / power if power > 0 else (math.inf if profile.alpha > 0 else 0.0)
    slack2 = n_se * math.hypot(profile.alpha_se, r * profile.beta_se) + rounding * (1.0 + r)
    slack_c = n_se * profile.alpha_se + rounding
    margin2 = r * power - profile.alpha
    margin_c = r - profile.alpha
    return Lemma2Report(
        r=r,
        alpha=profile.alpha,
        beta=profile.beta,
        ratio=ratio,
        power_bound_margin=margin2,
        size_bound_margin=margin_c,
        power_bound_slack=slack2,
        size_bound_slack=slack_c,
        power_bound_holds=margin2 >= -slack2,
        size_bound_holds=margin_c >= -slack_c,
    )
