"""Summation of the infinite series that appear in the identities.

``sum_with_tail`` adds terms directly, with compensated accumulation, until a
caller-supplied remainder bound drops below tolerance. An optional
``correction`` estimates the remainder itself; the bound then covers what the
correction misses. ``boole_tail`` and ``euler_maclaurin_tail`` build such
corrections for terms of the form (c + ln n) * rational(n).

``sum_alternating`` is the Cohen-Rodriguez Villegas-Zagier acceleration for
sum (-1)^(m+1) a_m.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import budget
from .specfun import bernoulli


class BudgetError(RuntimeError):
    """Summation needed more terms than the budget allows."""


@dataclass(frozen=True)
class SumResult:
    value: float
    tail_bound: float
    terms_used: int


def _eval_terms(term, n):
    try:
        y = np.asarray(term(n), dtype=float)
        if y.shape != n.shape:
            y = np.broadcast_to(y, n.shape).astype(float)
    except (TypeError, ValueError):
        y = np.array([term(int(k)) for k in n], dtype=float)
    budget.charge(n.size)
    return y


def _smallest_n(tail, tol, start, max_terms):
    n = max(start, 1)
    if tail(n) < tol:
        return n
    lo = n
    while True:
        n *= 2
        if n - start + 1 > max_terms:
            raise BudgetError(
                f"tail bound still >= {tol:.3g} after {max_terms} terms"
            )
        if tail(n) < tol:
            break
        lo = n
    hi = n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail(mid) < tol:
            hi = mid
        else:
            lo = mid
    return hi


def compensated_sum(term, start, stop, block=1 << 18):
    """sum term(n) for start <= n <= stop, exactly rounded per block."""
    parts = []
    lo = start
    while lo <= stop:
        hi = min(lo + block - 1, stop)
        parts.append(math.fsum(_eval_terms(term, np.arange(lo, hi + 1, dtype=np.int64))))
        lo = hi + 1
    return math.fsum(parts)


def sum_with_tail(term, tail, tol, *, start=1, correction=None, min_terms=1,
                  max_terms=None, block=1 << 18):
    """Sum term(n) for n >= start.

    ``term`` is called on int64 arrays of indices. ``tail(N)`` must bound the
    error left after summing through N, i.e. |sum_{n>N} term(n) - correction(N)|
    (correction defaults to zero), and must not increase with N.
    """
    if max_terms is None:
        max_terms = budget.current().max_terms
    n_last = _smallest_n(tail, tol, start + min_terms - 1, max_terms)
    value = compensated_sum(term, start, n_last, block)
    if correction is not None:
        value = math.fsum([value, correction(n_last)])
    return SumResult(value, float(tail(n_last)), n_last - start + 1)


def sum_alternating(term_abs, tol=1e-15, *, max_terms=10**4):
    """sum_{m>=1} (-1)^(m+1) term_abs(m) by Chebyshev acceleration."""
    digits = max(-math.log10(tol), 1.0)
    n = math.ceil(1.31 * digits)
    if n > max_terms:
        raise BudgetError(f"{n} terms needed, budget is {max_terms}")
    a = _eval_terms(term_abs, np.arange(1, n + 1, dtype=np.int64))
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    bound = 2.0 * float(np.max(np.abs(a))) / d
    return SumResult(float(s / d), bound, n)


class LogRational:
    """f(t) = (c + ln t) * sum_i coef_i / (t + shift_i)^power_i, for t > 0.

    Supplies the derivatives the remainder formulas need.
    """

    def __init__(self, poles, log_const=0.0):
        self.poles = [(float(c), float(s), int(p)) for c, s, p in poles]
        self.log_const = float(log_const)

    def _rational(self, t, k):
        acc = 0.0
        for c, s, p in self.poles:
            rising = math.prod(range(p, p + k)) if k else 1
            acc += c * (-1) ** k * rising / (t + s) ** (p + k)
        return acc

    def __call__(self, t):
        return self.deriv(t, 0)

    def deriv(self, t, m):
        total = (self.log_const + math.log(t)) * self._rational(t, m)
        for i in range(1, m + 1):
            dlog = (-1) ** (i - 1) * math.factorial(i - 1) / t**i
            total += math.comb(m, i) * dlog * self._rational(t, m - i)
        return total

    def vector(self, n):
        t = np.asarray(n, dtype=float)
        r = np.zeros_like(t)
        for c, s, p in self.poles:
            r += c / (t + s) ** p
        return (self.log_const + np.log(t)) * r


@lru_cache(maxsize=None)
def _stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def _powers_sum(z, j):
    # sum_{n>=0} n^j z^n for |z| = 1, z != 1 (Abel sense)
    if j == 0:
        return 1.0 / (1.0 - z)
    w = z / (1.0 - z)
    return sum(math.factorial(k) * _stirling2(j + 1, k + 1) * w ** (k + 1)
               for k in range(j + 1))


def boole_tail(f, theta, m, order=8):
    """Estimate sum_{n>=m} f(n) e^(i n theta) from derivatives of f at m.

    Returns (complex estimate, bound) where the bound is the size of the last
    two retained terms (one of them vanishes identically at theta = pi). The
    expansion is asymptotic; below m*|1 - e^(i theta)| = order the bound is
    reported as infinite.
    """
    z = complex(math.cos(theta), math.sin(theta))
    if m * abs(1.0 - z) < order:
        return 0j, math.inf
    zm = complex(math.cos(m * theta), math.sin(m * theta))
    terms = [f.deriv(m, j) / math.factorial(j) * _powers_sum(z, j)
             for j in range(order + 1)]
    return zm * sum(terms), abs(terms[-1]) + abs(terms[-2])


def euler_maclaurin_tail(f, integral_from, n, order=4):
    """Estimate sum_{k>n} f(k) as int_n^inf f - f(n)/2 - sum B_2j/(2j)! f^(2j-1)(n).

    ``integral_from(n)`` is the closed-form integral of f over [n, inf).
    Returns (estimate, bound); the bound is the first omitted correction.
    """
    parts = [integral_from(n), -0.5 * f.deriv(n, 0)]
    for j in range(1, order + 1):
        c = float(bernoulli(2 * j) / math.factorial(2 * j))
        parts.append(-c * f.deriv(n, 2 * j - 1))
    j = order + 1
    nxt = float(bernoulli(2 * j) / math.factorial(2 * j)) * f.deriv(n, 2 * j - 1)
    return math.fsum(parts), abs(nxt)
