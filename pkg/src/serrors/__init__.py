"""Hypothesis tests that minimize a weighted sum of Type I and Type II errors.

The optimal test rejects H0 when the ratio of evidences (prior-weighted
likelihoods) falls below r = b/a.  Subpackages:

* :mod:`serrors.special`: log-gamma/beta, incomplete beta, normal tails;
* :mod:`serrors.evidence`: evidences, evidence ratios and posterior odds;
* :mod:`serrors.decision`: the decision rule and Jeffreys grades;
* :mod:`serrors.design`: classical designs and their implied error weights;
* :mod:`serrors.verification`: optimality, Monte Carlo, consistency and
  predictive-matching checks.
"""

__version__ = "0.1.0"

from .decision import Decision, ErrorWeights, Verdict, decide, elicit_ratio, jeffreys_grade
from .design import DesignSpec, design_simple_normal, error_profile_degroot, error_profile_fixed_alpha
from .errors import DomainError, ScenarioError
from .evidence import (
    evidence_ratio_freeman,
    log_evidence_binomial,
    log_evidence_normal,
    log_indifference_odds_binomial,
    log_indifference_odds_normal,
)
from .hypotheses import CountSummary, HypothesisPair, NormalSummary, Region

__all__ = [
    "__version__",
    "Decision",
    "ErrorWeights",
    "Verdict",
    "decide",
    "elicit_ratio",
    "jeffreys_grade",
    "DesignSpec",
    "design_simple_normal",
    "error_profile_degroot",
    "error_profile_fixed_alpha",
    "DomainError",
    "ScenarioError",
    "evidence_ratio_freeman",
    "log_evidence_binomial",
    "log_evidence_normal",
    "log_indifference_odds_binomial",
    "log_indifference_odds_normal",
    "CountSummary",
    "HypothesisPair",
    "NormalSummary",
    "Region",
]
