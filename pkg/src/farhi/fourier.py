"""Fourier expansion of ln Gamma on (0, 1) and the closed forms built on it.

Coefficients follow the convention

    ln Gamma(x) = a0 + sum a_k cos(2 pi k x) + sum b_k sin(2 pi k x),

with a0 = ln(2 pi)/2, a_k = 1/(2k) and b_k = ln k/(pi k) + eta/k, where
eta = (gamma + ln 2 pi)/pi. The ``*_quad`` functions recompute the same
quantities by quadrature so the two routes can be compared.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import quadrature, series, specfun
from .specfun import CONSTANTS, DomainError

PI = math.pi
ETA = CONSTANTS.farhi_eta
GAMMA = CONSTANTS.euler_gamma
LN_TWO_PI = CONSTANTS.ln_two_pi


@dataclass(frozen=True)
class FourierCoeffs:
    """Coefficient arrays indexed by k itself; slot 0 of ``a`` and ``b`` is unused (nan)."""

    a0: float
    a: np.ndarray
    b: np.ndarray
    k_max: int

    @classmethod
    def closed_form(cls, k_max):
        return _closed_coeffs(int(k_max))


@lru_cache(maxsize=4)
def _closed_coeffs(k_max):
    k = np.arange(1, k_max + 1, dtype=float)
    a = np.concatenate([[np.nan], 0.5 / k])
    b = np.concatenate([[np.nan], np.log(k) / (PI * k) + ETA / k])
    a.flags.writeable = False
    b.flags.writeable = False
    return FourierCoeffs(0.5 * LN_TWO_PI, a, b, k_max)


@dataclass(frozen=True)
class EtaFnParams:
    x: float
    theta: float

    @classmethod
    def at(cls, x):
        return cls(x, 2.0 * PI * x)


def _lngamma_times(weight):
    def f(t):
        return specfun.ln_gamma(t) * weight(t)
    return f


def lngamma_integrand(weight=None):
    """ln Gamma(t) * weight(t) on (0, 1), flagged singular at 0."""
    f = specfun.ln_gamma if weight is None else _lngamma_times(weight)
    return quadrature.Integrand(f, 0.0, 1.0, singular_lower=True)


def coeff_a_quad(k, tol=1e-12):
    """Cosine coefficient by quadrature; k = 0 gives the mean a0."""
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return quadrature.integrate(lngamma_integrand(), tol).value
    f = lngamma_integrand(lambda t: 2.0 * np.cos(2.0 * PI * k * t))
    return quadrature.integrate(f, tol).value


def coeff_b_quad(k, tol=1e-12):
    """eta_k = 2 int_0^1 ln Gamma(t) sin(2 pi k t) dt by quadrature."""
    if k < 1:
        raise DomainError("k must be >= 1")
    f = lngamma_integrand(lambda t: 2.0 * np.sin(2.0 * PI * k * t))
    return quadrature.integrate(f, tol).value


def eta_k_closed(k):
    return math.log(k) / (PI * k) + ETA / k


def partial_sum(x, n_terms, coeffs):
    """Truncated Fourier series of ln Gamma at x with ``n_terms`` harmonics."""
    if not 0.0 < x < 1.0:
        raise DomainError("partial_sum requires 0 < x < 1")
    if n_terms > coeffs.k_max:
        raise IndexError(f"N = {n_terms} exceeds k_max = {coeffs.k_max}")
    if n_terms == 0:
        return coeffs.a0
    k = np.arange(1, n_terms + 1, dtype=np.int64)
    # reduce k x mod 1 before scaling by 2 pi to keep the phase accurate
    phase = 2.0 * PI * np.mod(k * x, 1.0)
    cos_part = math.fsum(coeffs.a[1:n_terms + 1] * np.cos(phase))
    sin_part = math.fsum(coeffs.b[1:n_terms + 1] * np.sin(phase))
    return math.fsum([coeffs.a0, cos_part, sin_part])


def _check_open(x):
    if not 0.0 < x < 1.0:
        raise DomainError("x must lie in (0, 1)")


def farhi_rhs(x, series_value):
    """Farhi's right-hand side given sum ln n/n sin(2 pi n x) = series_value."""
    _check_open(x)
    return (
        0.5 * math.log(PI)
        + PI * ETA * (0.5 - x)
        - 0.5 * math.log(math.sin(PI * x))
        + series_value / PI
    )


def kummer_rhs(x, series_value):
    """Kummer/Connon form of the same expansion."""
    _check_open(x)
    return (
        0.5 * math.log(PI / math.sin(PI * x))
        + (0.5 - x) * (GAMMA + LN_TWO_PI)
        + series_value / PI
    )


def blagouchine_rhs(b, phi):
    """Closed form of sum_{n>=1} ln(b n)/n sin(n phi), b > 0, 0 < phi < 2 pi."""
    if not b > 0.0:
        raise DomainError("b must be positive")
    if not 0.0 < phi < 2.0 * PI:
        raise DomainError("phi must lie in (0, 2 pi)")
    return (
        PI * specfun.ln_gamma(phi / (2.0 * PI))
        + 0.5 * PI * math.log(math.sin(0.5 * phi))
        - 0.5 * PI * math.log(PI)
        + 0.5 * (phi - PI) * (GAMMA + math.log(2.0 * PI / b))
    )


# ln n / (n (n^2 - 1)) and ln n / (n^2 - 1) in partial fractions
_ETA_SIN_TERM = series.LogRational([(-1.0, 0.0, 1), (0.5, -1.0, 1), (0.5, 1.0, 1)])
_ETA_COS_TERM = series.LogRational([(0.5, -1.0, 1), (-0.5, 1.0, 1)])


def _trig_series(f, theta, kind, tol):
    """sum_{n>=2} f(n) sin(n theta) (kind 's') or cos (kind 'c')."""
    trig = np.sin if kind == "s" else np.cos

    def term(n):
        return f.vector(n) * trig(n * theta)

    def tail(n):
        return series.boole_tail(f, theta, n + 1)[1]

    def correction(n):
        c = series.boole_tail(f, theta, n + 1)[0]
        return c.imag if kind == "s" else c.real

    return series.sum_with_tail(term, tail, tol, start=2, correction=correction)


def eta_fn_closed(x, tol=1e-13):
    """eta(x) = 2 int_0^x ln Gamma(t) sin(2 pi t) dt from its closed form, x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise DomainError("eta_fn_closed requires 0 <= x <= 1")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return ETA
    p = EtaFnParams.at(x)
    theta = p.theta
    half_sin = math.sin(PI * min(x, 1.0 - x))  # sin(theta/2) without cancellation near 1
    s2 = half_sin * half_sin
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    sin_series = _trig_series(_ETA_SIN_TERM, theta, "s", tol).value
    cos_series = _trig_series(_ETA_COS_TERM, theta, "c", tol).value
    return math.fsum([
        ETA * s2,
        ETA * (theta * cos_t - sin_t) / (2.0 * PI),
        s2 / (2.0 * PI) * (1.0 + 2.0 * math.log(PI / half_sin)),
        cos_t / PI**2 * sin_series,
        -sin_t / PI**2 * cos_series,
    ])


def eta_fn_quad(x, tol=1e-12):
    """eta(x) straight from its integral definition."""
    f = lngamma_integrand(lambda t: 2.0 * np.sin(2.0 * PI * t))
    return quadrature.integrate_to(f, x, tol)


def logcos_series_closed(x):
    """Closed form of sum_{n>=1} ln n/n^2 cos(2 pi n x) for 0 < x < 1."""
    _check_open(x)
    return (
        PI**2 * (x * (1.0 - x) - 1.0 / 6.0) * (GAMMA + LN_TWO_PI - 1.0)
        + 0.5 * PI * specfun.clausen2(2.0 * PI * x)
        - 2.0 * PI**2 * specfun.zeta_prime_neg1(x)
    )


def parseval_closed():
    """Closed form of int_0^1 ln^2 Gamma(t) dt."""
    ln_a = CONSTANTS.ln_glaisher
    return (
        2.0 * ln_a * (GAMMA + LN_TWO_PI)
        - GAMMA**2 / 12.0
        + PI**2 / 48.0
        + LN_TWO_PI / 6.0 * (LN_TWO_PI - GAMMA)
        + specfun.zeta_dds(2.0) / (2.0 * PI**2)
    )


def shamov_ci_identity(k, tol=1e-12):
    """(2 int_0^1 sin(2 pi k t) ln(1/t) dt by quadrature, [gamma + ln(2 pi k) - Ci(2 pi k)]/(pi k))."""
    if k < 1:
        raise DomainError("k must be >= 1")
    f = quadrature.Integrand(
        lambda t: -2.0 * np.log(t) * np.sin(2.0 * PI * k * t), 0.0, 1.0,
        singular_lower=True,
    )
    quad = quadrature.integrate(f, tol).value
    z = 2.0 * PI * k
    closed = (GAMMA + math.log(z) - specfun.cosine_integral(z)) / (PI * k)
    return quad, closed
