"""Real-valued special functions on the ranges the Farhi identities need.

Everything here is plain double precision: log-gamma and digamma by a
Stirling series after an upward shift, Hurwitz zeta and its first two
s-derivatives by Euler-Maclaurin, the Clausen function by its Bernoulli
expansion, and the cosine integral by series / continued fraction.

``ln_gamma`` and ``digamma`` accept numpy arrays as well as scalars, so the
quadrature engines can evaluate integrands on whole node sets at once.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np


class DomainError(ValueError):
    """Argument outside the documented domain of a function."""


class PoleError(DomainError):
    """Argument sits on a pole (s = 1 for the zeta family)."""


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    ln_two_pi: float
    ln_glaisher: float
    catalan: float
    farhi_eta: float
    pi: float


# 20-digit reference values, rounded to double.
EULER_GAMMA = 0.57721566490153286061
LN_TWO_PI = 1.8378770664093454836
LN_GLAISHER = 0.24875447703378426255
CATALAN = 0.91596559417721901505

CONSTANTS = Constants(
    euler_gamma=EULER_GAMMA,
    ln_two_pi=LN_TWO_PI,
    ln_glaisher=LN_GLAISHER,
    catalan=CATALAN,
    farhi_eta=(EULER_GAMMA + LN_TWO_PI) / math.pi,
    pi=math.pi,
)

TWO_PI = 2.0 * math.pi


@lru_cache(maxsize=None)
def bernoulli(n):
    """Exact Bernoulli number B_n (B_1 = -1/2) as a Fraction."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b.append(-acc / (m + 1))
    return b[n]


def _b2k_over_fact(j):
    # B_{2j} / (2j)!
    return float(bernoulli(2 * j) / math.factorial(2 * j))


_STIRLING = [float(bernoulli(2 * k)) / (2 * k * (2 * k - 1)) for k in range(1, 11)]
_DIGAMMA_ASY = [float(bernoulli(2 * k)) / (2 * k) for k in range(1, 11)]
_EM_COEFFS = [_b2k_over_fact(j) for j in range(1, 13)]  # through B_24
_CLAUSEN = [
    float(abs(bernoulli(2 * k)) / (2 * k * (2 * k + 1) * math.factorial(2 * k)))
    for k in range(1, 31)
]

_SHIFT = 10.0


def _as_array(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError(f"{name} requires x > 0")
    return arr


def _shift_up(x):
    # returns (y, prod, recip) with y = x + n >= _SHIFT,
    # prod = x (x+1) ... (x+n-1) and recip = sum 1/(x+i)
    y = x.copy()
    prod = np.ones_like(y)
    recip = np.zeros_like(y)
    for _ in range(int(_SHIFT)):
        m = y < _SHIFT
        if not m.any():
            break
        prod[m] *= y[m]
        recip[m] += 1.0 / y[m]
        y[m] += 1.0
    return y, prod, recip


def ln_gamma(x):
    """ln Gamma(x) for x > 0."""
    arr = _as_array(x, "ln_gamma")
    y, prod, _ = _shift_up(np.atleast_1d(arr))
    inv = 1.0 / y
    inv2 = inv * inv
    series = np.zeros_like(y)
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    out = (y - 0.5) * np.log(y) - y + 0.5 * LN_TWO_PI + series * inv - np.log(prod)
    return float(out[0]) if arr.ndim == 0 else out


def digamma(x):
    """psi(x) = d/dx ln Gamma(x) for x > 0."""
    arr = _as_array(x, "digamma")
    y, _, recip = _shift_up(np.atleast_1d(arr))
    inv2 = 1.0 / (y * y)
    series = np.zeros_like(y)
    for c in reversed(_DIGAMMA_ASY):
        series = series * inv2 + c
    out = np.log(y) - 0.5 / y - series * inv2 - recip
    return float(out[0]) if arr.ndim == 0 else out


def clausen2(theta):
    """Cl_2(theta) = sum sin(n theta)/n^2."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    sign = 1.0
    if t > math.pi:
        t = TWO_PI - t
        sign = -1.0
    if t == 0.0:
        return 0.0
    # expansion about 0; ratio of successive terms <= (t/2pi)^2 <= 1/4
    t2 = t * t
    acc = 0.0
    for c in reversed(_CLAUSEN):
        acc = acc * t2 + c
    return sign * (t - t * math.log(t) + acc * t2 * t)


def _check_zeta_args(s, a):
    if s == 1.0:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    if not a > 0.0:
        raise DomainError("zeta(s, a) requires a > 0")


def _hurwitz_em(s, a, order, n_direct=None):
    """[zeta, d/ds zeta, d2/ds2 zeta][:order+1] at (s, a) by Euler-Maclaurin."""
    if n_direct is None:
        # for s < 0 the direct terms grow and cancel against the corrections,
        # so stop the direct sum as soon as n + a reaches 5
        n_direct = max(0, math.ceil(5.0 - a)) if s < 0.0 else 30
    out = []
    q = n_direct + a
    lq = math.log(q)
    logs = [math.log(k + a) for k in range(n_direct)]
    for d in range(order + 1):
        direct = math.fsum((-lk) ** d * math.exp(-s * lk) for lk in logs)
        # q^(1-s)/(s-1) differentiated d times by Leibniz
        g = math.exp((1.0 - s) * lq)
        integral = 0.0
        for m in range(d + 1):
            h = (-1) ** (d - m) * math.factorial(d - m) / (s - 1.0) ** (d - m + 1)
            integral += math.comb(d, m) * (-lq) ** m * g * h
        half = 0.5 * (-lq) ** d * math.exp(-s * lq)
        # Bernoulli corrections; (P, P', P'') of the rising factorial (s)_{2j-1}
        p = [s, 1.0, 0.0]
        corr = []
        for j, c in enumerate(_EM_COEFFS, start=1):
            if j > 1:
                for i in (2 * j - 3, 2 * j - 2):
                    p = [p[0] * (s + i), p[1] * (s + i) + p[0], p[2] * (s + i) + 2.0 * p[1]]
            e = math.exp(-(s + 2 * j - 1) * lq)
            term = 0.0
            for m in range(d + 1):
                term += math.comb(d, m) * p[d - m] * (-lq) ** m * e
            term *= c
            corr.append(term)
            partial = direct + integral + half
            if j >= 2 and abs(term) < 1e-17 * max(abs(partial), 1e-300):
                break
        out.append(math.fsum([direct, integral, half] + corr))
    return out


def hurwitz_zeta(s, a):
    """zeta(s, a) = sum_{n>=0} (n+a)^-s, analytically continued in s."""
    _check_zeta_args(s, a)
    return _hurwitz_em(s, a, 0)[0]


def hurwitz_zeta_ds(s, a):
    """Partial derivative of zeta(s, a) with respect to s."""
    _check_zeta_args(s, a)
    return _hurwitz_em(s, a, 1)[1]


def zeta_prime_neg1(a):
    """zeta'(-1, a) on (0, 1]; a = 0 is taken as the limit zeta'(-1)."""
    if not 0.0 <= a <= 1.0:
        raise DomainError("zeta_prime_neg1 requires 0 <= a <= 1")
    # (a)^1 ln a -> 0, so zeta'(-1, 0+) = zeta'(-1, 1)
    return hurwitz_zeta_ds(-1.0, 1.0 if a == 0.0 else a)


def zeta_dds(s):
    """Second derivative of Riemann zeta, sum ln^2 n / n^s, for s > 1."""
    if not s > 1.0:
        raise DomainError("zeta_dds requires s > 1")
    return _hurwitz_em(s, 1.0, 2)[2]


def stieltjes_gamma1(a, n_direct=30):
    """First generalized Stieltjes constant gamma_1(a), 0 < a <= 1.

    Limit of sum_{k<=N} ln(k+a)/(k+a) - ln^2(N+a)/2, with the remainder
    after ``n_direct`` terms supplied by Euler-Maclaurin.
    """
    if not 0.0 < a <= 1.0:
        raise DomainError("stieltjes_gamma1 requires 0 < a <= 1")
    q = n_direct + a
    lq = math.log(q)
    parts = [math.log(k + a) / (k + a) for k in range(n_direct)]
    parts.append(-0.5 * lq * lq)
    parts.append(0.5 * lq / q)
    # f(t) = ln t / t:  f^(m)(t) = (-1)^m m! (ln t - H_m) / t^(m+1)
    harmonic = 0.0
    for m in range(1, 2 * len(_EM_COEFFS)):
        harmonic += 1.0 / m
        if m % 2 == 0:
            continue
        j = (m + 1) // 2
        deriv = (-1) ** m * math.factorial(m) * (lq - harmonic) / q ** (m + 1)
        term = -_EM_COEFFS[j - 1] * deriv
        parts.append(term)
        if j >= 2 and abs(term) < 1e-18:
            break
    return math.fsum(parts)


def negapolygamma(x):
    """psi^(-2)(x) = integral_0^x ln Gamma(t) dt for 0 <= x <= 1."""
    if not 0.0 <= x <= 1.0:
        raise DomainError("negapolygamma requires 0 <= x <= 1")
    if x == 0.0:
        return 0.0
    return (
        0.5 * x * (1.0 - x)
        + 0.5 * x * LN_TWO_PI
        - zeta_prime_neg1(1.0)
        + zeta_prime_neg1(x)
    )


def cosine_integral(x):
    """Ci(x) = gamma + ln x + integral_0^x (cos t - 1)/t dt for x > 0."""
    if not x > 0.0:
        raise DomainError("cosine_integral requires x > 0")
    if x <= 2.0:
        x2 = x * x
        term = 1.0
        acc = 0.0
        k = 0
        while True:
            k += 1
            term *= -x2 / ((2 * k - 1) * (2 * k))
            inc = term / (2 * k)
            acc += inc
            if abs(inc) < 1e-18:
                break
        return EULER_GAMMA + math.log(x) + acc
    # modified Lentz continued fraction for E1(ix); Ci(x) = -Re E1(ix)
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(2, 1000):
        an = -float((i - 1) * (i - 1))
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    h *= complex(math.cos(x), -math.sin(x))
    return -h.real
