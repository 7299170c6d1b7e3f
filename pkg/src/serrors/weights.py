"""Weight measures over a hypothesis's parameter region.

A weight plays the role of a prior restricted to one hypothesis: it averages
the likelihood into an evidence and the pointwise error rates into the
averaged Type I / Type II errors.  Proper weights can be sampled, which the
Monte Carlo checks rely on.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .special import log_beta, normal_log_pdf

__all__ = [
    "PointMass",
    "TwoPointMass",
    "Uniform",
    "BetaWeight",
    "NormalWeight",
    "ImproperWeight",
    "dirac_at_null",
    "jeffreys_binomial",
    "intrinsic_normal",
    "weight_from_dict",
]


@dataclass(frozen=True)
class PointMass:
    value: float
    proper = True
    discrete = True

    def atoms(self):
        return [(float(self.value), 1.0)]

    def support(self):
        return (self.value, self.value)

    def sample(self, rng, size):
        return np.full(size, float(self.value))

    def to_dict(self):
        return {"type": "point_mass", "value": self.value}


@dataclass(frozen=True)
class TwoPointMass:
    """Half the mass at ``center - delta`` and half at ``center + delta``."""

    center: float
    delta: float
    proper = True
    discrete = True

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError(f"two-point delta must be positive, got {self.delta!r}")

    def atoms(self):
        return [(self.center - self.delta, 0.5), (self.center + self.delta, 0.5)]

    def support(self):
        return (self.center - self.delta, self.center + self.delta)

    def sample(self, rng, size):
        signs = np.where(rng.random(size) < 0.5, -1.0, 1.0)
        return self.center + signs * self.delta

    def to_dict(self):
        return {"type": "two_point_mass", "center": self.center, "delta": self.delta}


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float
    proper = True
    discrete = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"uniform weight needs lo < hi, got ({self.lo}, {self.hi})")

    def support(self):
        return (self.lo, self.hi)

    def density(self, theta):
        return 1.0 / (self.hi - self.lo) if self.lo <= theta <= self.hi else 0.0

    def sample(self, rng, size):
        return rng.uniform(self.lo, self.hi, size)

    def to_dict(self):
        return {"type": "uniform", "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class BetaWeight:
    a: float
    b: float
    proper = True
    discrete = False

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError(f"beta weight needs positive parameters, got ({self.a}, {self.b})")

    def support(self):
        return (0.0, 1.0)

    def density(self, theta):
        if not 0.0 < theta < 1.0:
            return 0.0
        return math.exp(
            (self.a - 1.0) * math.log(theta)
            + (self.b - 1.0) * math.log1p(-theta)
            - log_beta(self.a, self.b)
        )

    def sample(self, rng, size):
        return rng.beta(self.a, self.b, size)

    def to_dict(self):
        return {"type": "beta", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class NormalWeight:
    mean: float
    variance: float
    proper = True
    discrete = False

    def __post_init__(self):
        if not self.variance > 0:
            raise DomainError(f"normal weight needs positive variance, got {self.variance!r}")

    def support(self):
        return (-math.inf, math.inf)

    def density(self, theta):
        sd = math.sqrt(self.variance)
        return math.exp(normal_log_pdf((theta - self.mean) / sd)) / sd

    def sample(self, rng, size):
        return rng.normal(self.mean, math.sqrt(self.variance), size)

    def to_dict(self):
        return {"type": "normal", "mean": self.mean, "variance": self.variance}


@dataclass(frozen=True)
class ImproperWeight:
    """Reference measure that does not integrate to one (e.g. 1/sigma).

    Usable only where evidences are predictively matched; it cannot be
    sampled, so averaged error rates are undefined.
    """

    kind: str = "flat"
    proper = False
    discrete = False

    def support(self):
        return (-math.inf, math.inf)

    def sample(self, rng, size):
        raise DomainError(f"cannot sample from improper weight {self.kind!r}")

    def to_dict(self):
        return {"type": "improper", "kind": self.kind}


def dirac_at_null(theta0):
    return PointMass(theta0)


def jeffreys_binomial():
    """Beta(1/2, 1/2), density 1 / (pi sqrt(theta (1 - theta)))."""
    return BetaWeight(0.5, 0.5)


def intrinsic_normal(theta0, sigma):
    """Intrinsic weight N(theta0, 2 sigma^2) for a two-sided normal mean test."""
    return NormalWeight(theta0, 2.0 * sigma * sigma)


_BUILDERS = {
    "point_mass": lambda d: PointMass(d["value"]),
    "dirac_at_null": lambda d: PointMass(d["value"]),
    "two_point_mass": lambda d: TwoPointMass(d["center"], d["delta"]),
    "uniform": lambda d: Uniform(d["lo"], d["hi"]),
    "beta": lambda d: BetaWeight(d["a"], d["b"]),
    "jeffreys": lambda d: jeffreys_binomial(),
    "normal": lambda d: NormalWeight(d["mean"], d["variance"]),
    "improper": lambda d: ImproperWeight(d.get("kind", "flat")),
}


def weight_from_dict(d):
    try:
        builder = _BUILDERS[d["type"]]
    except KeyError:
        raise DomainError(f"unknown weight type {d.get('type')!r}") from None
    return builder(d)
