"""Scalar special functions for binomial tail calculations.

Everything here is a pure function of its arguments. Binomial tail
probabilities are routed through the regularized incomplete beta function
``I_q(a, b)``, evaluated by a continued fraction (modified Lentz), using the
identity ``P(X >= i | p) = I_p(i, n - i + 1)``.
"""

from __future__ import annotations

import math
from statistics import NormalDist

import numpy as np

from .exceptions import DomainError, NonConvergenceError

__all__ = [
    "binom_pmf",
    "binom_sf",
    "binom_cdf",
    "binom_pmf_grid",
    "reg_inc_beta",
    "reg_inc_beta_inv",
    "tail_integral_upper",
    "tail_integral_lower",
    "normal_quantile",
]

_EPS = 1e-16
_TINY = 1e-300
_CF_MAX_ITER = 2000
_INV_MAX_ITER = 300

_STD_NORMAL = NormalDist()


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _check_p(p, name="p"):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {p!r}")
    return float(p)


def binom_pmf(n, x, p):
    """Binomial probability ``C(n, x) p^x (1 - p)^(n - x)``, evaluated in log space."""
    n = _check_n(n)
    p = _check_p(p)
    if int(x) != x or not 0 <= x <= n:
        raise DomainError(f"x must be an integer in [0, {n}], got {x!r}")
    x = int(x)
    if p == 0.0:
        return 1.0 if x == 0 else 0.0
    if p == 1.0:
        return 1.0 if x == n else 0.0
    log_pmf = math.log(math.comb(n, x)) + x * math.log(p) + (n - x) * math.log1p(-p)
    return math.exp(log_pmf)


def binom_pmf_grid(n, p):
    """Vectorised pmf: array of shape ``(len(p), n + 1)`` with ``[k, x] = P(X = x | p[k])``."""
    n = _check_n(n)
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if np.any((p < 0) | (p > 1)):
        raise DomainError("p must lie in [0, 1]")
    x = np.arange(n + 1)
    log_comb = np.array([math.log(math.comb(n, k)) for k in range(n + 1)])
    with np.errstate(divide="ignore", invalid="ignore"):
        logp = np.log(p)[:, None]
        logq = np.log1p(-p)[:, None]
        # 0 * log(0) must contribute 0, not nan
        a = np.where(x[None, :] == 0, 0.0, x[None, :] * logp)
        b = np.where(x[None, :] == n, 0.0, (n - x)[None, :] * logq)
    return np.exp(log_comb[None, :] + a + b)


def _betacf(a, b, x):
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise NonConvergenceError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )


def _log_beta_front(a, b, x):
    return (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )


def _inc_beta_with_front(a, b, q):
    """``(I_q(a, b), q^a (1-q)^b / B(a, b))`` for ``0 < q < 1``."""
    front = math.exp(_log_beta_front(a, b, q))
    if q < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, q) / a, front
    return 1.0 - front * _betacf(b, a, 1.0 - q) / b, front


def reg_inc_beta(a, b, q):
    """Regularized incomplete beta function ``I_q(a, b)``.

    Raises
    ------
    DomainError
        If ``a <= 0``, ``b <= 0`` or ``q`` is outside ``[0, 1]``.
    NonConvergenceError
        If the continued fraction fails to converge.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f"shape parameters must be positive, got a={a!r}, b={b!r}")
    q = _check_p(q, "q")
    if q == 0.0:
        return 0.0
    if q == 1.0:
        return 1.0
    return _inc_beta_with_front(a, b, q)[0]


def _beta_log_pdf(a, b, x):
    return (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x)
    )


def reg_inc_beta_inv(a, b, target):
    """Point ``q`` with ``I_q(a, b) = target``.

    Newton steps on the beta density, falling back to bisection whenever a
    step leaves the current bracket.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f"shape parameters must be positive, got a={a!r}, b={b!r}")
    target = _check_p(target, "target")
    if target == 0.0:
        return 0.0
    if target == 1.0:
        return 1.0

    lo, hi = 0.0, 1.0
    # Start from the mean; Newton converges quickly from there for moderate shapes.
    x = a / (a + b)
    best_x, best_f = x, math.inf
    for _ in range(_INV_MAX_ITER):
        f = reg_inc_beta(a, b, x) - target
        if abs(f) < best_f:
            best_x, best_f = x, abs(f)
        if f == 0.0:
            return x
        if f < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= 2.0 * _EPS * max(x, 1e-290):
            return best_x
        try:
            step = f / math.exp(_beta_log_pdf(a, b, x))
        except (OverflowError, ValueError):
            step = math.inf
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi) if lo > 0 else 0.5 * hi
            # geometric bisection when the bracket spans orders of magnitude
            if lo > 0 and hi / lo > 4.0:
                x_new = math.sqrt(lo * hi)
        if x_new == x:
            return best_x
        x = x_new
    raise NonConvergenceError(
        f"inverse incomplete beta did not converge for a={a}, b={b}, target={target}"
    )


def binom_sf(n, i, p):
    """Upper tail ``P(X >= i | p)`` for ``X ~ Bin(n, p)``, with ``0 <= i <= n + 1``."""
    n = _check_n(n)
    p = _check_p(p)
    if int(i) != i or not 0 <= i <= n + 1:
        raise DomainError(f"i must be an integer in [0, {n + 1}], got {i!r}")
    i = int(i)
    if i == 0:
        return 1.0
    if i == n + 1:
        return 0.0
    return reg_inc_beta(i, n - i + 1, p)


def binom_cdf(n, i, p):
    """Lower tail ``P(X <= i | p)``, with ``-1 <= i <= n``.

    Equal to ``1 - binom_sf(n, i + 1, p)``, but evaluated through the
    reflected beta function so small values keep their relative precision.
    """
    n = _check_n(n)
    p = _check_p(p)
    if int(i) != i or not -1 <= i <= n:
        raise DomainError(f"i must be an integer in [-1, {n}], got {i!r}")
    i = int(i)
    if i == -1:
        return 0.0
    if i == n:
        return 1.0
    return reg_inc_beta(n - i, i + 1, 1.0 - p)


def _g_upper(n, i, q):
    # G_i(q) = int_0^q P(X >= i | p) dp
    if i == 0:
        return q
    if i == n + 1 or q == 0.0:
        return 0.0
    if q == 1.0:
        return (n - i + 1) / (n + 1)
    # I_q(i+1, b) = I_q(i, b) - front / i, so one incomplete beta suffices
    tail, front = _inc_beta_with_front(i, n - i + 1, q)
    return (q - i / (n + 1)) * tail + front / (n + 1)


def tail_integral_upper(n, i, q):
    """``int_0^q P(X >= i | p) dp``, by the closed form

    ``q * I_q(i, n-i+1) - i/(n+1) * I_q(i+1, n-i+1)``,
    evaluated with a single incomplete beta via the shift-in-``a`` recurrence.

    ``i`` may range over ``0..n+1``; the end cases give ``q`` and ``0``.
    """
    n = _check_n(n)
    q = _check_p(q, "q")
    if int(i) != i or not 0 <= i <= n + 1:
        raise DomainError(f"i must be an integer in [0, {n + 1}], got {i!r}")
    return _g_upper(n, int(i), q)


def tail_integral_lower(n, i, q):
    """``int_0^q P(X <= i | p) dp`` for ``0 <= i <= n``."""
    n = _check_n(n)
    q = _check_p(q, "q")
    if int(i) != i or not 0 <= i <= n:
        raise DomainError(f"i must be an integer in [0, {n}], got {i!r}")
    return q - _g_upper(n, int(i) + 1, q)


def normal_quantile(prob):
    """Standard normal quantile."""
    if not 0.0 < prob < 1.0:
        raise DomainError(f"prob must lie in (0, 1), got {prob!r}")
    return _STD_NORMAL.inv_cdf(prob)
