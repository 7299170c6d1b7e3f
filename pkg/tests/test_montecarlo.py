import math

import numpy as np
import pytest

from serrors.decision import ErrorWeights
from serrors.design import EXAMPLE1, error_profile_degroot
from serrors.errors import DomainError
from serrors.verification.montecarlo import (
    BinomialModel,
    MonteCarloConfig,
    NormalMeanModel,
    always_accept,
    always_reject,
    fixed_alpha_rule,
    mc_error_profile,
    simple_rule,
)
from serrors.weights import ImproperWeight, PointMass, Uniform

CFG = MonteCarloConfig(trials=40_000, seed=11, block_size=5_000)


def _example1(n, r, config=CFG):
    return mc_error_profile(simple_rule(n, 3.0, -1.0, 1.0, r), NormalMeanModel(n, 3.0),
                            PointMass(-1.0), PointMass(1.0), config, ErrorWeights.from_ratio(r))


def test_agrees_with_exact_profile():
    mc = _example1(20, 0.63)
    exact = error_profile_degroot(20, EXAMPLE1, 0.63)
    assert abs(mc.alpha - exact.alpha) < 4 * mc.alpha_se
    assert abs(mc.beta - exact.beta) < 4 * mc.beta_se


def test_identical_across_worker_counts():
    base = _example1(20, 0.63)
    for workers in (2, 3, 8):
        cfg = MonteCarloConfig(trials=CFG.trials, seed=CFG.seed, block_size=CFG.block_size, workers=workers)
        assert _example1(20, 0.63, cfg) == base


def test_seed_changes_result():
    other = MonteCarloConfig(trials=CFG.trials, seed=12, block_size=CFG.block_size)
    assert _example1(20, 0.63, other) != _example1(20, 0.63)


def test_blocks_cover_trials():
    cfg = MonteCarloConfig(trials=10_001, block_size=1000)
    blocks = cfg.blocks()
    assert sum(s for _, s in blocks) == 10_001
    assert [k for k, _ in blocks] == list(range(11))


def test_trivial_rules():
    model = NormalMeanModel(5, 1.0)
    acc = mc_error_profile(always_accept, model, PointMass(0.0), PointMass(1.0), CFG)
    rej = mc_error_profile(always_reject, model, PointMass(0.0), PointMass(1.0), CFG)
    assert (acc.alpha, acc.beta) == (0.0, 1.0)
    assert (rej.alpha, rej.beta) == (1.0, 0.0)
    assert acc.alpha_se == 0.0 and rej.beta_se == 0.0


def test_fixed_alpha_rule_level():
    prof = mc_error_profile(fixed_alpha_rule(10, 3.0, -1.0, 1.0, 0.05), NormalMeanModel(10, 3.0),
                            PointMass(-1.0), PointMass(1.0), CFG)
    assert abs(prof.alpha - 0.05) < 4 * prof.alpha_se
    assert abs(prof.beta - 0.32156339237120472) < 4 * prof.beta_se


def test_binomial_model_with_weight():
    # reject when S >= 7 of 10, theta ~ U(0.5, 1) under H1
    rule = lambda s: np.asarray(s) >= 7
    prof = mc_error_profile(rule, BinomialModel(10), PointMass(0.5), Uniform(0.5, 1.0), CFG)
    alpha = sum(math.comb(10, k) for k in range(7, 11)) / 1024
    assert abs(prof.alpha - alpha) < 4 * prof.alpha_se


def test_refuses_improper_weights():
    with pytest.raises(DomainError):
        mc_error_profile(always_accept, NormalMeanModel(5, 1.0), ImproperWeight("flat"), PointMass(1.0), CFG)


@pytest.mark.parametrize("kw", [dict(trials=0), dict(workers=0), dict(seed=-1), dict(block_size=0)])
def test_config_validation(kw):
    with pytest.raises(DomainError):
        MonteCarloConfig(**kw)
