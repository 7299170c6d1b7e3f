"""Quadrature checks that improper reference weights are predictively matched.

Two situations are covered:

* location-scale pairs: with weight 1/sigma, the marginal density of two
  distinct observations is 1 / (2 |x2 - x1|) whatever the standardized
  density f (normal and Cauchy are implemented);
* a normal mean test with unknown variance: 1/sigma under the null and
  (1/sigma) Cauchy(mu | mu0, sigma) under the alternative give the same
  marginal for a single observation, 1 / (2 |x - mu0|).

Integrals over sigma run over t = ln(sigma); nested adaptive Gauss-Kronrod
quadrature (QUADPACK via scipy) handles both dimensions.
"""

import math

from scipy import integrate

from ..errors import DomainError

__all__ = [
    "FAMILIES",
    "predictive_matching_location_scale",
    "predictive_matching_jeffreys_normal",
    "closed_form_predictive",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
# ln(sigma) window around ln|x2 - x1|.  Above it the integrands decay like
# 1/sigma; below it like sigma (Cauchy tails), so the truncated mass is about
# exp(-20) relative.  Going lower would put the peaks of the inner integrand
# ~1e9 standardized units apart, beyond what doubles resolve reliably.
_LOG_SIGMA_BELOW = 20.0
_LOG_SIGMA_ABOVE = 40.0
_INNER_REL_EPSABS = 1e-12


def _normal(z):
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def _cauchy(z):
    return 1.0 / (math.pi * (1.0 + z * z))


FAMILIES = {"normal": _normal, "cauchy": _cauchy}


def closed_form_predictive(x1, x2):
    return 1.0 / (2.0 * abs(x2 - x1))


def _cuts_around(peaks):
    # Unit-width peaks can sit ~1e17 apart when sigma is tiny; geometric cuts
    # keep every quad call on a range where the integrand varies on its scale.
    cuts = set(peaks)
    span = max(peaks) - min(peaks)
    for p in peaks:
        w = 1.0
        while w < span:
            cuts.update((p - w, p + w))
            w *= 10.0
    lo, hi = min(peaks), max(peaks)
    return sorted(c for c in cuts if lo <= c <= hi)


def _integrate_peaks(fn, peaks):
    """Integral of ``fn`` over the real line, split around ``peaks``."""
    cuts = _cuts_around(peaks)
    # Absolute tolerance relative to the integrand's height: the values range
    # over many decades as sigma varies.
    scale = max(fn(c) for c in cuts)
    opts = dict(epsabs=_INNER_REL_EPSABS * scale, epsrel=1e-9, limit=200)
    total = integrate.quad(fn, -math.inf, cuts[0], **opts)[0]
    for lo, hi in zip(cuts, cuts[1:]):
        total += integrate.quad(fn, lo, hi, **opts)[0]
    total += integrate.quad(fn, cuts[-1], math.inf, **opts)[0]
    return total


def _integrate_log_sigma(fn, centre):
    lo = centre - _LOG_SIGMA_BELOW
    hi = centre + _LOG_SIGMA_ABOVE
    points = [centre + k for k in (-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0)]
    val, _ = integrate.quad(fn, lo, hi, points=points, epsabs=0.0, epsrel=1e-9, limit=400)
    return val


def predictive_matching_location_scale(family, x1, x2):
    """Double integral of sigma^-3 f((x1 - mu)/sigma) f((x2 - mu)/sigma) dmu dsigma.

    For each sigma the inner integral runs over u = (mu - midpoint)/sigma,
    whose integrand f(-a - u) f(a - u), a = |x2 - x1| / (2 sigma), has its
    mass near u = -a, 0 and a.
    """
    try:
        f = FAMILIES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    if x1 == x2:
        raise DomainError("the predictive diverges for coincident observations")
    half_gap = 0.5 * abs(x2 - x1)

    def outer(t):
        sigma = math.exp(t)
        a = half_gap / sigma
        inner = _integrate_peaks(lambda u: f(-a - u) * f(a - u), (-a, 0.0, a))
        # sigma^-3 dmu dsigma = sigma^-1 du dt
        return inner / sigma

    return _integrate_log_sigma(outer, math.log(2.0 * half_gap))


def predictive_matching_jeffreys_normal(x, mu0):
    """Marginals ``(m0, m1)`` of one normal observation under the two weights.

    m0 integrates N(x | mu0, sigma^2) against 1/sigma; m1 integrates
    N(x | mu, sigma^2) against (1/sigma) Cauchy(mu | mu0, sigma).
    """
    if x == mu0:
        raise DomainError("the null marginal diverges at x == mu0")
    centre = math.log(abs(x - mu0))

    def null_integrand(t):
        sigma = math.exp(t)
        # N(x | mu0, sigma^2) / sigma dsigma = phi((x - mu0)/sigma) / sigma dt
        return _normal((x - mu0) / sigma) / sigma

    def alt_integrand(t):
        sigma = math.exp(t)
        a = (x - mu0) / sigma
        # mu = x - sigma u: phi(u) c(a - u) / sigma du dt
        inner = _integrate_peaks(lambda u: _normal(u) * _cauchy(a - u), (0.0, a))
        return inner / sigma

    return _integrate_log_sigma(null_integrand, centre), _integrate_log_sigma(alt_integrand, centre)
