"""Scalar special-function kernels, evaluated on the natural-log scale.

Evidence values for binomial data with N around 1e8 are far outside the
range of a double (0.5**N underflows long before that), so every routine
here either returns a logarithm or is accurate enough in the tails to be
combined on the log scale.
"""

import math
from statistics import NormalDist

from .errors import DomainError

__all__ = [
    "log_gamma",
    "log_beta",
    "log_binomial_coefficient",
    "regularized_incomplete_beta",
    "normal_pdf",
    "normal_log_pdf",
    "normal_cdf",
    "normal_log_cdf",
    "normal_log_tail",
    "normal_quantile",
    "normal_log_interval_mass",
    "log_add_exp",
    "log_sub_exp",
    "log1m_exp",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)

# Stirling remainder coefficients: lnG(x) - [(x-1/2)ln x - x + ln sqrt(2 pi)]
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
)
_STIRLING_MIN = 10.0

# Above this z, erfc underflows soon after; use the asymptotic tail series.
_TAIL_SERIES_MIN = 35.0


def _check_positive(name, value):
    if not value > 0 or math.isinf(value):
        raise DomainError(f"{name} must be a positive finite real, got {value!r}")


def log_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    _check_positive("x", x)
    return math.lgamma(x)


def _stirling_remainder(x):
    inv = 1.0 / x
    inv2 = inv * inv
    acc = 0.0
    for c in reversed(_STIRLING):
        acc = acc * inv2 + c
    return acc * inv


def log_beta(a, b):
    """ln B(a, b) = ln G(a) + ln G(b) - ln G(a + b).

    For large arguments the three log-gamma values are each of order
    ``a ln a`` and cancel heavily, so when both arguments are at least 10 the
    Stirling forms are combined analytically before summing.
    """
    _check_positive("a", a)
    _check_positive("b", b)
    # Symmetric by construction: log_beta(a, b) == log_beta(b, a) bit for bit.
    lo, hi = (a, b) if a <= b else (b, a)
    if lo < _STIRLING_MIN:
        return math.lgamma(lo) + math.lgamma(hi) - math.lgamma(lo + hi)
    c = lo + hi
    # (lo - 1/2) ln(lo/c) + (hi - 1/2) ln(hi/c) - 1/2 ln c + ln sqrt(2 pi) + remainders
    main = (lo - 0.5) * math.log1p(-hi / c) + (hi - 0.5) * math.log1p(-lo / c)
    corr = _stirling_remainder(lo) + _stirling_remainder(hi) - _stirling_remainder(c)
    return main - 0.5 * math.log(c) + _LOG_SQRT_2PI + corr


def log_binomial_coefficient(n, k):
    """ln C(n, k) for real ``n >= k >= 0``."""
    if k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n!r}, k={k!r}")
    if k == 0 or k == n:
        return 0.0
    return -math.log(n + 1.0) - log_beta(n - k + 1.0, k + 1.0)


def _beta_continued_fraction(x, a, b, max_iter):
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge "
        f"(x={x}, a={a}, b={b}, max_iter={max_iter})"
    )


def _log1p_minus_t(t):
    """ln(1 + t) - t, without cancellation for small ``t``."""
    if abs(t) > 0.1:
        return math.log1p(t) - t
    # -t^2/2 + t^3/3 - ...; 30 terms reach double precision at |t| = 0.1.
    term = t
    total = 0.0
    for k in range(2, 32):
        term *= -t
        total += term / k
    return total


def _log_beta_front(x, a, b):
    """ln[x^a (1 - x)^b / B(a, b)].

    For large a and b each of a ln x, b ln(1 - x) and ln B(a, b) is huge
    and they nearly cancel.  Written around the mean x0 = a / (a + b), the
    first-order terms cancel exactly and only the small deviations remain.
    """
    c = a + b
    d = x - a / c
    u = d * c / a  # x / x0 - 1
    v = -d * c / b  # (1 - x) / (1 - x0) - 1
    # Far from the mean the front factor is tiny and the direct form is fine.
    if min(a, b) < _STIRLING_MIN or max(abs(u), abs(v)) > 0.5:
        return a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    corr = _stirling_remainder(a) + _stirling_remainder(b) - _stirling_remainder(c)
    return (
        a * _log1p_minus_t(u)
        + b * _log1p_minus_t(v)
        + 0.5 * (math.log(a) + math.log(b) - math.log(c))
        - _LOG_SQRT_2PI
        - corr
    )


def regularized_incomplete_beta(x, a, b):
    """I_x(a, b), the Beta(a, b) distribution function at ``x``.

    The continued fraction is evaluated on whichever side of the mean it
    converges fastest; the other side follows from
    ``I_x(a, b) = 1 - I_{1-x}(b, a)``.  Convergence takes O(sqrt(max(a, b)))
    iterations, so arguments near 1e8 work but are slow; callers dealing
    with posteriors that large should prefer a normal approximation.
    """
    _check_positive("a", a)
    _check_positive("b", b)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = _log_beta_front(x, a, b)
    max_iter = 1000 + int(20.0 * math.sqrt(a + b))
    if x < (a + 1.0) / (a + b + 2.0):
        if log_front < -745.0:
            return 0.0
        return math.exp(log_front) * _beta_continued_fraction(x, a, b, max_iter) / a
    if log_front < -745.0:
        return 1.0
    tail = math.exp(log_front) * _beta_continued_fraction(1.0 - x, b, a, max_iter) / b
    return 1.0 - tail


def normal_log_pdf(z):
    return -0.5 * z * z - _LOG_SQRT_2PI


def normal_pdf(z):
    return math.exp(normal_log_pdf(z))


def normal_cdf(z):
    """Standard normal distribution function."""
    return 0.5 * math.erfc(-z / _SQRT2)


def _log_tail_series(z):
    # ln[phi(z)/z * (1 - 1/z^2 + 3/z^4 - 15/z^6 + ...)], valid for large z.
    inv2 = 1.0 / (z * z)
    term = 1.0
    total = 1.0
    for k in range(1, 12):
        term *= -(2 * k - 1) * inv2
        total += term
    return normal_log_pdf(z) - math.log(z) + math.log(total)


def normal_log_tail(z):
    """ln(1 - Phi(z)), accurate well past the point where 1 - Phi underflows."""
    if z >= _TAIL_SERIES_MIN:
        return _log_tail_series(z)
    if z > -5.0:
        return math.log(0.5 * math.erfc(z / _SQRT2))
    return math.log1p(-0.5 * math.erfc(-z / _SQRT2))


def normal_log_cdf(z):
    """ln Phi(z)."""
    return normal_log_tail(-z)


_STD_NORMAL = NormalDist()


def normal_quantile(p):
    """Inverse of :func:`normal_cdf` on the open unit interval."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    z = _STD_NORMAL.inv_cdf(p)
    # One Newton step against our own cdf so the round trip is tight.
    dens = normal_pdf(z)
    if dens > 0.0:
        z -= (normal_cdf(z) - p) / dens
    return z


def normal_log_interval_mass(z_lo, z_hi):
    """Log masses of a standard normal inside and outside ``[z_lo, z_hi]``.

    Returns ``(log_inside, log_outside)``; both stay finite when either mass is
    far below the smallest double.
    """
    if z_lo > z_hi:
        raise DomainError("interval bounds out of order")
    log_out = log_add_exp(normal_log_cdf(z_lo), normal_log_tail(z_hi))
    if z_lo == z_hi:
        return -math.inf, log_out
    if z_lo > 0.0:
        log_in = log_sub_exp(normal_log_tail(z_lo), normal_log_tail(z_hi))
    elif z_hi < 0.0:
        log_in = log_sub_exp(normal_log_cdf(z_hi), normal_log_cdf(z_lo))
    else:
        log_in = log1m_exp(log_out)
    return log_in, log_out


def log_add_exp(x, y):
    """ln(e^x + e^y) without overflow."""
    if x == -math.inf:
        return y
    if y == -math.inf:
        return x
    hi, lo = (x, y) if x >= y else (y, x)
    return hi + math.log1p(math.exp(lo - hi))


def log_sub_exp(x, y):
    """ln(e^x - e^y) for ``x >= y``."""
    if y > x:
        raise DomainError("log_sub_exp needs x >= y")
    if y == -math.inf:
        return x
    return x + log1m_exp(y - x)


def log1m_exp(x):
    """ln(1 - e^x) for ``x <= 0``."""
    if x > 0:
        raise DomainError("log1m_exp needs x <= 0")
    if x == 0:
        return -math.inf
    if x > -math.log(2.0):
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))
