"""Data summaries and hypothesis descriptions."""

from dataclasses import dataclass
import math

from .errors import DomainError

__all__ = ["NormalSummary", "CountSummary", "Region", "HypothesisPair", "FAMILIES"]

FAMILIES = ("normal", "binomial", "negative_binomial")


@dataclass(frozen=True)
class NormalSummary:
    """Sample mean of ``n`` draws from N(theta, sigma^2) with sigma known.

    ``mean`` may be a numpy array, in which case the normal-family ratios
    evaluate elementwise (used by the Monte Carlo checks).
    """

    mean: float
    n: int
    sigma: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"sample size must be >= 1, got {self.n!r}")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")

    @property
    def standard_error(self):
        return self.sigma / math.sqrt(self.n)


@dataclass(frozen=True)
class CountSummary:
    """``successes`` out of ``trials`` Bernoulli outcomes.

    For the negative-binomial reading, ``failures`` is the stopping count.
    """

    successes: int
    trials: int

    def __post_init__(self):
        if not 0 <= self.successes <= self.trials:
            raise DomainError(
                f"need 0 <= successes <= trials, got {self.successes}/{self.trials}"
            )

    @property
    def failures(self):
        return self.trials - self.successes


@dataclass(frozen=True)
class Region:
    """A parameter region: ``point``, ``interval``, ``not_point`` or ``not_interval``."""

    kind: str
    lo: float
    hi: float = None

    def __post_init__(self):
        if self.kind not in ("point", "interval", "not_point", "not_interval"):
            raise DomainError(f"unknown region kind {self.kind!r}")
        if self.kind in ("point", "not_point"):
            object.__setattr__(self, "hi", self.lo)
        elif self.hi is None or not self.lo < self.hi:
            raise DomainError(f"interval region needs lo < hi, got ({self.lo}, {self.hi})")

    def contains(self, theta):
        if self.kind == "point":
            return theta == self.lo
        if self.kind == "interval":
            return self.lo <= theta <= self.hi
        if self.kind == "not_point":
            return theta != self.lo
        return not self.lo <= theta <= self.hi

    def to_dict(self):
        d = {"kind": self.kind, "lo": self.lo}
        if self.kind.endswith("interval"):
            d["hi"] = self.hi
        return d


@dataclass(frozen=True)
class HypothesisPair:
    """H0: theta in ``null`` against H1: theta in ``alternative``."""

    family: str
    null: Region
    alternative: Region

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.family != "normal":
            for region in (self.null, self.alternative):
                if region.lo < 0 or region.hi > 1:
                    raise DomainError(f"{region} leaves the unit interval")
        if not self._disjoint():
            raise DomainError(f"regions overlap: {self.null} and {self.alternative}")

    def _disjoint(self):
        a, b = self.null, self.alternative
        if a.kind.startswith("not_") and b.kind.startswith("not_"):
            return False
        if a.kind.startswith("not_"):
            a, b = b, a
        # a is now a point or an interval
        if b.kind == "not_point":
            return a.kind == "point" and a.lo == b.lo
        if b.kind == "not_interval":
            return b.lo <= a.lo and a.hi <= b.hi
        if a.kind == "point" and b.kind == "point":
            return a.lo != b.lo
        # Closed-open boundaries are a measure-zero matter for continuous weights.
        return a.hi <= b.lo or b.hi <= a.lo

    def to_dict(self):
        return {
            "family": self.family,
            "null": self.null.to_dict(),
            "alternative": self.alternative.to_dict(),
        }
