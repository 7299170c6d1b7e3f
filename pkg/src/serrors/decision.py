"""The optimal test: compare the evidence ratio against r = b/a.

Minimizing ``a * alpha + b * beta`` over all tests is achieved pointwise by
rejecting H0 exactly where ``evidence0 / evidence1 < b / a``.  This module
turns a log evidence ratio into that decision, grades it on the Jeffreys
scale, and derives ``r`` from prior probabilities and losses.
"""

from dataclasses import dataclass
import enum
import math

from .errors import DomainError

__all__ = [
    "ErrorWeights",
    "Verdict",
    "Decision",
    "JeffreysGrade",
    "TIE_TOLERANCE",
    "GRADE_BOUNDARIES",
    "decide",
    "elicit_ratio",
    "jeffreys_grade",
    "grade_from_log_ratio",
]

# |log_ratio - ln r| at or below this is reported as a tie.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ErrorWeights:
    """Weights ``a`` on Type I and ``b`` on Type II error; only b/a matters."""

    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0) or math.isinf(self.a) or math.isinf(self.b):
            raise DomainError(f"error weights must be positive and finite, got a={self.a}, b={self.b}")

    @classmethod
    def from_ratio(cls, r):
        return cls(1.0, r)

    @property
    def ratio(self):
        return self.b / self.a

    @property
    def log_ratio(self):
        return math.log(self.b) - math.log(self.a)

    def serrors(self, alpha, beta):
        return self.a * alpha + self.b * beta


class Verdict(str, enum.Enum):
    REJECT_H0 = "RejectH0"
    ACCEPT_H0 = "AcceptH0"
    INDIFFERENT = "Indifferent"


# Upper edges of grades 1, 2, 4, 5 and 6 on the "against" side.  A ratio that
# lands exactly on an edge gets the stronger grade.
GRADE_BOUNDARIES = (1.0, 10**-0.5, 10**-1.0, 10**-1.5, 10**-2.0)
_GRADES = (1, 2, 4, 5, 6)
_AGAINST = {
    0: "Null Supported",
    1: "Mild Evidence against H0",
    2: "Substantial Evidence against H0",
    4: "Strong Evidence against H0",
    5: "Very Strong Evidence against H0",
    6: "Decisive Evidence against H0",
}
_FOR = {
    1: "Null Supported",
    2: "Substantial Evidence for H0",
    4: "Strong Evidence for H0",
    5: "Very Strong Evidence for H0",
    6: "Decisive Evidence for H0",
}
# The table skips grade 3; Jeffreys' own numbering runs 0..5 over the same rows.
_CLASSIC = {0: 0, 1: 1, 2: 2, 4: 3, 5: 4, 6: 5}


@dataclass(frozen=True)
class JeffreysGrade:
    grade: int
    direction: str
    label: str
    mirrored: bool = False

    @property
    def classic_grade(self):
        return _CLASSIC[self.grade]


_LOG_BOUNDARIES = tuple(math.log(edge) for edge in GRADE_BOUNDARIES)


def _against_grade(log_x):
    grade = 0
    for edge, g in zip(_LOG_BOUNDARIES, _GRADES):
        if log_x < edge or (g > 1 and log_x == edge):
            grade = g
    return grade


def grade_from_log_ratio(log_ratio_01):
    """:func:`jeffreys_grade` for a ratio given by its natural log."""
    if math.isnan(log_ratio_01):
        raise DomainError("log evidence ratio is NaN")
    if log_ratio_01 < 0.0:
        g = _against_grade(log_ratio_01)
        return JeffreysGrade(g, "against_H0", _AGAINST[g])
    if log_ratio_01 == 0.0:
        return JeffreysGrade(0, "for_H0", _AGAINST[0])
    g = max(_against_grade(-log_ratio_01), 1)
    return JeffreysGrade(g, "for_H0", _FOR[g], mirrored=True)


def jeffreys_grade(ratio_01):
    """Grade an evidence ratio of H0 over H1.

    Ratios below 1 are graded by the table as evidence against H0.  Ratios
    above 1 are graded by applying the same thresholds to the reciprocal and
    reported in the ``for_H0`` direction (``mirrored=True``), keeping the
    "Null Supported" label for the weakest band.
    """
    if not ratio_01 > 0 or math.isinf(ratio_01):
        raise DomainError(f"evidence ratio must be positive and finite, got {ratio_01!r}")
    return grade_from_log_ratio(math.log(ratio_01))


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    log_ratio_01: float
    r: float
    grade: JeffreysGrade

    @property
    def ratio_01(self):
        try:
            return math.exp(self.log_ratio_01)
        except OverflowError:
            return math.inf

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "log_ratio_01": self.log_ratio_01,
            "ratio_01": self.ratio_01,
            "r": self.r,
            "grade": self.grade.grade,
            "classic_grade": self.grade.classic_grade,
            "direction": self.grade.direction,
            "label": self.grade.label,
            "grade_is_mirrored_extension": self.grade.mirrored,
        }


def decide(log_ratio_01, weights: ErrorWeights = ErrorWeights()):
    """Reject H0 iff ln(evidence0/evidence1) < ln(b/a); ties are Indifferent."""
    if not isinstance(weights, ErrorWeights):
        raise DomainError("weights must be an ErrorWeights instance")
    if math.isnan(log_ratio_01) or math.isinf(log_ratio_01):
        raise DomainError(f"log evidence ratio must be finite, got {log_ratio_01!r}")
    threshold = weights.log_ratio
    gap = log_ratio_01 - threshold
    if abs(gap) <= TIE_TOLERANCE:
        verdict = Verdict.INDIFFERENT
    elif gap < 0:
        verdict = Verdict.REJECT_H0
    else:
        verdict = Verdict.ACCEPT_H0
    return Decision(verdict, log_ratio_01, weights.ratio, grade_from_log_ratio(log_ratio_01))


def elicit_ratio(prior_null, loss_false_accept, loss_false_reject):
    """r = b/a = P(H1) L0 / (P(H0) L1).

    ``loss_false_accept`` (L0) is the loss for accepting H0 when H1 holds;
    ``loss_false_reject`` (L1) the loss for rejecting H0 when it holds.
    """
    if not 0.0 < prior_null < 1.0:
        raise DomainError(f"prior probability of H0 must lie in (0, 1), got {prior_null!r}")
    if not (loss_false_accept > 0 and loss_false_reject > 0):
        raise DomainError("losses must be positive")
    return (1.0 - prior_null) * loss_false_accept / (prior_null * loss_false_reject)
