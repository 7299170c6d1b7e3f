"""Runnable verification suites with structured reports.

Each suite returns a :class:`SuiteReport` whose ``rows`` hold the numbers
that were checked and whose ``failures`` name the invariant that broke.
Defaults (grids, seeds, instance counts) are fixed so a report can be
regenerated exactly.
"""

from dataclasses import dataclass, field
import math
import time

import numpy as np

from ..decision import ErrorWeights
from ..errors import DomainError
from ..weights import NormalWeight, PointMass, TwoPointMass
from . import consistency as cons
from . import matching
from . import montecarlo as mc
from . import optimality as opt

__all__ = [
    "SUITES",
    "DEFAULT_SEED",
    "Failure",
    "SuiteReport",
    "run_suite",
    "lemma1_suite",
    "lemma2_suite",
    "consistency_suite",
    "matching_suite",
    "LOCATION_SCALE_GRID",
    "JEFFREYS_GRID",
]

SUITES = ("lemma1", "lemma2", "consistency", "matching")
DEFAULT_SEED = 20130530
ORACLE_TOLERANCE = 1e-12
# Sampled pmfs sum to one only to within a few ulps.
PMF_ROUNDING = 1e-15
MATCHING_TOLERANCE = 1e-3

# Ten observation pairs / (x, mu0) points spanning several scales and signs.
LOCATION_SCALE_GRID = (
    (0.0, 1.0),
    (0.0, 4.0),
    (-3.0, 2.5),
    (1e-3, 2e-3),
    (100.0, 250.0),
    (-7.0, -6.9),
    (5.0, -5.0),
    (0.25, 1e3),
    (-1e4, 1e4),
    (2.0, 2.0 + 1e-6),
)
JEFFREYS_GRID = (
    (1.0, 0.0),
    (3.0, 1.0),
    (-2.0, 5.0),
    (0.01, 0.0),
    (10.0, 0.0),
    (-0.5, 0.5),
    (1e3, -1e3),
    (7.0, 6.0),
    (1e-4, -1e-4),
    (-40.0, 2.0),
)


@dataclass(frozen=True)
class Failure:
    invariant: str
    detail: str

    def to_dict(self):
        return {"invariant": self.invariant, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    elapsed_s: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def fail(self, invariant, detail):
        self.failures.append(Failure(invariant, detail))

    def to_dict(self):
        return {
            "suite": self.suite,
            "passed": self.passed,
            "summary": self.summary,
            "failures": [f.to_dict() for f in self.failures],
            "rows": self.rows,
            "elapsed_s": self.elapsed_s,
        }


# ---------------------------------------------------------------------------
# pointwise rule against exhaustive search


def _random_problems(seed, count, max_size):
    rng = np.random.default_rng(seed)
    sizes = rng.integers(1, max_size + 1, size=count)
    return [opt.random_discrete_problem(rng, int(k)) for k in sizes]


def _tie_problem():
    # a w0 = b w1 exactly at outcome 1 (0.25 vs 0.25 with a = b).
    return opt.DiscreteTestProblem.from_probabilities((0.5, 0.25, 0.25), (0.125, 0.25, 0.625))


def lemma1_suite(seed=DEFAULT_SEED, instances=200, max_size=12):
    report = SuiteReport("lemma1")
    matches = 0
    worst = 0.0
    for i, problem in enumerate(_random_problems(seed, instances, max_size)):
        _, best = opt.brute_force_optimal_test(problem)
        pointwise = opt.serrors_of(problem, opt.lemma1_rule_discrete(problem))
        gap = pointwise - best
        worst = max(worst, abs(gap))
        ok = abs(gap) <= ORACLE_TOLERANCE
        matches += ok
        report.rows.append({"check": "random", "instance": i, "size": problem.size, "oracle": best,
                            "pointwise": pointwise, "gap": gap, "pass": ok})
        if not ok:
            report.fail("lemma1.oracle_equivalence",
                        f"instance {i} (K={problem.size}): pointwise {pointwise!r} vs oracle {best!r}")

    problem = opt.binomial_problem(3, 0.5, 0.75)
    chosen, best = opt.brute_force_optimal_test(problem)
    ok = chosen == (2, 3) and best == 0.65625 and opt.lemma1_rule_discrete(problem) == (2, 3)
    report.rows.append({"check": "binomial_n3", "rejection_set": list(chosen), "oracle": best, "pass": ok})
    if not ok:
        report.fail("lemma1.binomial_n3", f"got set {chosen} with serrors {best!r}; expected (2, 3), 0.65625")

    problem = _tie_problem()
    with_tie = opt.serrors_of(problem, (1, 2))
    without = opt.serrors_of(problem, (2,))
    _, best = opt.brute_force_optimal_test(problem)
    ok = with_tie == without == best
    report.rows.append({"check": "boundary_outcome", "with": with_tie, "without": without, "oracle": best, "pass": ok})
    if not ok:
        report.fail("lemma1.boundary_outcome", f"serrors {with_tie!r} vs {without!r}, oracle {best!r}")

    report.summary = {"matches": matches, "instances": instances, "max_abs_gap": worst}
    return report


# ---------------------------------------------------------------------------
# alpha <= r (1 - beta) and alpha <= r for optimal rules


def _continuous_instances(seed, count):
    """(label, rule, model, weight0, weight1, r) for sampled normal-mean tests.

    The first instance is the two-sided intrinsic test at r = 1 and n = 50;
    the rest cycle through simple, intrinsic and two-point tests with random
    n, sigma, theta0 and r.
    """
    out = [("intrinsic n=50 r=1", mc.intrinsic_rule(50, 1.0, 0.0, 1.0), mc.NormalMeanModel(50, 1.0),
            PointMass(0.0), NormalWeight(0.0, 2.0), 1.0)]
    rng = np.random.default_rng([seed, 2])
    kinds = ("simple", "intrinsic", "two_point")
    for i in range(1, count):
        kind = kinds[i % 3]
        n = int(rng.integers(1, 200))
        sigma = float(rng.uniform(0.5, 4.0))
        theta0 = float(rng.uniform(-2.0, 2.0))
        r = float(np.exp(rng.uniform(math.log(0.05), math.log(20.0))))
        model = mc.NormalMeanModel(n, sigma)
        if kind == "simple":
            theta1 = theta0 + float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0))
            rule = mc.simple_rule(n, sigma, theta0, theta1, r)
            w1 = PointMass(theta1)
        elif kind == "intrinsic":
            rule = mc.intrinsic_rule(n, sigma, theta0, r)
            w1 = NormalWeight(theta0, 2.0 * sigma**2)
        else:
            delta = float(rng.uniform(0.1, 2.0))
            rule = mc.two_point_rule(n, sigma, theta0, delta, r)
            w1 = TwoPointMass(theta0, delta)
        out.append((f"{kind} n={n} r={r:.4g}", rule, model, PointMass(theta0), w1, r))
    return out


def lemma2_suite(seed=DEFAULT_SEED, trials=100_000, instances=20, exact_instances=200, workers=1):
    report = SuiteReport("lemma2")
    exact_ok = 0
    for i, problem in enumerate(_random_problems(seed, exact_instances, 12)):
        chosen, _ = opt.brute_force_optimal_test(problem)
        check = opt.check_lemma2(opt.exact_profile(problem, chosen), problem.weights.ratio, n_se=0.0,
                                 rounding=PMF_ROUNDING)
        exact_ok += check.holds
        report.rows.append({"check": "exact", "instance": i} | check.to_dict())
        if not check.holds:
            report.fail("lemma2.exact", f"instance {i}: alpha={check.alpha!r}, beta={check.beta!r}, r={check.r!r}")

    config = mc.MonteCarloConfig(trials=trials, seed=seed, workers=workers)
    mc_ok = 0
    for label, rule, model, w0, w1, r in _continuous_instances(seed, instances):
        profile = mc.mc_error_profile(rule, model, w0, w1, config, ErrorWeights.from_ratio(r))
        check = opt.check_lemma2(profile, r)
        mc_ok += check.holds
        report.rows.append({"check": "monte_carlo", "instance": label} | check.to_dict())
        if not check.holds:
            report.fail("lemma2.monte_carlo", f"{label}: alpha={check.alpha!r}, beta={check.beta!r}")

    # Rejecting everything gives alpha = 1, beta = 0: ratio 1 > r whenever r < 1.
    control = opt.check_lemma2(mc.mc_error_profile(mc.always_reject, mc.NormalMeanModel(10, 1.0),
                                                   PointMass(0.0), PointMass(1.0), config), 0.5)
    report.rows.append({"check": "negative_control"} | control.to_dict())
    if control.holds:
        report.fail("lemma2.negative_control", "reject-everything rule should violate the bound at r=0.5")

    report.summary = {"exact_holds": exact_ok, "exact_instances": exact_instances,
                      "mc_holds": mc_ok, "mc_instances": instances, "trials": trials}
    return report


# ---------------------------------------------------------------------------
# consistency


def consistency_suite(seed=DEFAULT_SEED, trials=20_000, n_grid=cons.DEFAULT_GRID, setting=cons.SweepSetting()):
    """Exact sweeps for each test, cross-checked against a Monte Carlo sweep.

    ``trials=0`` skips the Monte Carlo cross-check.
    """
    report = SuiteReport("consistency")
    verdicts = {}
    config = mc.MonteCarloConfig(trials=trials, seed=seed) if trials else None
    for test in cons.TESTS:
        rows = cons.consistency_sweep(test, n_grid, setting)
        mc_rows = cons.consistency_sweep(test, n_grid, setting, method="mc", config=config) if config else None
        for k, row in enumerate(rows):
            rec = {"test": test, "n": row.n, "alpha": row.alpha, "beta": row.beta}
            if mc_rows:
                m = mc_rows[k]
                rec |= {"alpha_mc": m.alpha, "beta_mc": m.beta, "alpha_se": m.alpha_se, "beta_se": m.beta_se}
                # 4 binomial standard errors at the exact rate (an MC count of
                # zero has no spread of its own) plus one count of slack.
                for key in ("alpha", "beta"):
                    p = getattr(row, key)
                    se = math.sqrt(p * (1.0 - p) / trials)
                    if abs(getattr(m, key) - getattr(row, key)) > 4.0 * se + 1.0 / trials:
                        report.fail("consistency.mc_agreement",
                                    f"{test} n={row.n}: {key} exact {getattr(row, key)!r} vs MC {getattr(m, key)!r}")
            report.rows.append(rec)
        if test == "fixed_alpha":
            ok = all(r.alpha == setting.alpha for r in rows)
            verdicts[test] = "alpha held fixed" if ok else "alpha drifted"
            if not ok:
                report.fail("consistency.fixed_alpha_control", "classical rule's alpha should stay at its level")
        else:
            ok = cons.sweep_is_consistent(rows)
            verdicts[test] = "consistent" if ok else "not consistent"
            if not ok:
                last = rows[-1]
                report.fail(f"consistency.{test}",
                            f"at n={last.n}: alpha={last.alpha:.3g}, beta={last.beta:.3g}; "
                            f"both must fall below {cons.CONSISTENCY_LEVEL:g}")
    report.summary = {"verdicts": verdicts, "level": cons.CONSISTENCY_LEVEL, "grid": list(n_grid)}
    return report


# ---------------------------------------------------------------------------
# predictive matching


def matching_suite(tolerance=MATCHING_TOLERANCE):
    report = SuiteReport("matching")
    worst = 0.0
    for family in sorted(matching.FAMILIES):
        for x1, x2 in LOCATION_SCALE_GRID:
            value = matching.predictive_matching_location_scale(family, x1, x2)
            expected = matching.closed_form_predictive(x1, x2)
            rel = abs(value - expected) / expected
            worst = max(worst, rel)
            ok = rel <= tolerance
            report.rows.append({"check": f"location_scale.{family}", "x1": x1, "x2": x2,
                                "computed": value, "expected": expected, "rel_diff": rel, "pass": ok})
            if not ok:
                report.fail(f"matching.location_scale.{family}", f"({x1}, {x2}): {value!r} vs {expected!r}")
    ratios = []
    for x, mu0 in JEFFREYS_GRID:
        m0, m1 = matching.predictive_matching_jeffreys_normal(x, mu0)
        expected = matching.closed_form_predictive(x, mu0)
        rel0 = abs(m0 - expected) / expected
        rel = abs(m1 - m0) / m0
        worst = max(worst, rel0, rel)
        ratios.append(m1 / m0)
        ok = rel0 <= tolerance and rel <= tolerance
        report.rows.append({"check": "jeffreys_normal", "x": x, "mu0": mu0, "m0": m0, "m1": m1,
                            "expected": expected, "rel_diff": rel, "pass": ok})
        if not ok:
            report.fail("matching.jeffreys_normal", f"(x={x}, mu0={mu0}): m0={m0!r}, m1={m1!r}")
    # Evidence ratios from matched weights should not depend on the training observation.
    spread = max(ratios) - min(ratios)
    if spread > tolerance:
        report.fail("matching.training_sample_independence", f"m1/m0 ranges over {spread:.3g}")
    report.summary = {"max_rel_diff": worst, "ratio_spread": spread, "tolerance": tolerance,
                      "grid_points": len(LOCATION_SCALE_GRID)}
    return report


def run_suite(name, seed=DEFAULT_SEED, trials=None, workers=1):
    """Run a suite by name; ``trials`` overrides its Monte Carlo size."""
    start = time.perf_counter()
    if name == "lemma1":
        report = lemma1_suite(seed)
    elif name == "lemma2":
        report = lemma2_suite(seed, trials=trials or 100_000, workers=workers)
    elif name == "consistency":
        report = consistency_suite(seed, trials=20_000 if trials is None else trials)
    elif name == "matching":
        report = matching_suite()
    else:
        raise DomainError(f"unknown suite {name!r}; choose from {SUITES}")
    report.elapsed_s = time.perf_counter() - start
    return report
