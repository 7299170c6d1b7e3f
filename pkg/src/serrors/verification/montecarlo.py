"""Seeded Monte Carlo estimates of averaged Type I and Type II errors.

Each hypothesis is simulated by drawing theta from its weight and then data
from the model at that theta.  Trials are cut into fixed-size blocks and
block ``k`` of hypothesis ``j`` always draws from the substream
``SeedSequence(seed, spawn_key=(j, k))``.  Only integer rejection counts are
summed, so the estimate is bit-identical for any number of workers.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from ..decision import ErrorWeights
from ..design import ErrorProfile
from ..errors import DomainError
from ..evidence import (
    log_indifference_odds_normal,
    log_likelihood_ratio_simple_normal,
    log_ratio_two_point,
    log_ratio_two_sided_intrinsic,
)
from ..hypotheses import NormalSummary
from ..special import normal_quantile

__all__ = [
    "MonteCarloConfig",
    "NormalMeanModel",
    "BinomialModel",
    "mc_error_profile",
    "simple_rule",
    "intrinsic_rule",
    "two_point_rule",
    "indifference_rule",
    "fixed_alpha_rule",
    "always_accept",
    "always_reject",
]


@dataclass(frozen=True)
class MonteCarloConfig:
    trials: int = 100_000
    seed: int = 20130530
    block_size: int = 1 << 15
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1 or self.block_size < 1 or self.workers < 1:
            raise DomainError("trials, block_size and workers must be positive")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")

    def blocks(self):
        """``(index, size)`` of every block; the partition ignores ``workers``."""
        full, rest = divmod(self.trials, self.block_size)
        out = [(k, self.block_size) for k in range(full)]
        if rest:
            out.append((full, rest))
        return out

    def generator(self, hypothesis, block):
        ss = np.random.SeedSequence(self.seed, spawn_key=(hypothesis, block))
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class NormalMeanModel:
    """Sample mean of ``n`` N(theta, sigma^2) draws."""

    n: int
    sigma: float

    def sample(self, rng, theta):
        return rng.normal(theta, self.sigma / math.sqrt(self.n))


@dataclass(frozen=True)
class BinomialModel:
    trials: int

    def sample(self, rng, theta):
        return rng.binomial(self.trials, theta)


def _count_rejections(rule, model, weight, config, hypothesis, block, size):
    rng = config.generator(hypothesis, block)
    theta = weight.sample(rng, size)
    stat = model.sample(rng, theta)
    return int(np.count_nonzero(rule(stat)))


def mc_error_profile(rule, model, weight0, weight1, config=MonteCarloConfig(), weights=ErrorWeights()):
    """Estimate the averaged errors of ``rule`` with binomial standard errors.

    ``rule`` maps an array of sufficient statistics (sample means or success
    counts, as produced by ``model``) to a boolean array, True meaning
    "reject H0".
    """
    for w in (weight0, weight1):
        if not w.proper:
            raise DomainError(f"cannot average errors over improper weight {w!r}")
    jobs = [(j, k, size) for j in (0, 1) for k, size in config.blocks()]
    weight_of = {0: weight0, 1: weight1}

    def run(job):
        j, k, size = job
        return _count_rejections(rule, model, weight_of[j], config, j, k, size)

    if config.workers == 1:
        counts = list(map(run, jobs))
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            counts = list(pool.map(run, jobs))
    rejections = [0, 0]
    for (j, _, _), c in zip(jobs, counts):
        rejections[j] += c
    t = config.trials
    alpha = rejections[0] / t
    beta = (t - rejections[1]) / t
    return ErrorProfile.from_errors(
        alpha,
        beta,
        weights,
        alpha_se=math.sqrt(alpha * (1.0 - alpha) / t),
        beta_se=math.sqrt(beta * (1.0 - beta) / t),
        trials=t,
    )


# ---------------------------------------------------------------------------
# decision rules on sample means


def simple_rule(n, sigma, theta0, theta1, r):
    """Point null against point alternative: reject iff LR < r."""
    log_r = math.log(r)
    return lambda ybar: log_likelihood_ratio_simple_normal(
        NormalSummary(ybar, n, sigma), theta0, theta1
    ) < log_r


def intrinsic_rule(n, sigma, theta0, r):
    log_r = math.log(r)
    return lambda ybar: log_ratio_two_sided_intrinsic(NormalSummary(ybar, n, sigma), theta0) < log_r


def two_point_rule(n, sigma, theta0, delta, r):
    log_r = math.log(r)
    return lambda ybar: log_ratio_two_point(NormalSummary(ybar, n, sigma), theta0, delta) < log_r


def indifference_rule(n, sigma, theta0, delta, r):
    log_r = math.log(r)
    return lambda ybar: log_indifference_odds_normal(
        NormalSummary(np.asarray(ybar), n, sigma), theta0, delta
    ) < log_r


def fixed_alpha_rule(n, sigma, theta0, theta1, alpha):
    """Classical one-sided z test at level ``alpha`` toward ``theta1``."""
    z = normal_quantile(1.0 - alpha)
    s = 1.0 if theta1 > theta0 else -1.0
    se = sigma / math.sqrt(n)
    return lambda ybar: s * (np.asarray(ybar) - theta0) / se >= z


def always_accept(stat):
    return np.zeros(np.shape(stat), dtype=bool)


def always_reject(stat):
    return np.ones(np.shape(stat), dtype=bool)
