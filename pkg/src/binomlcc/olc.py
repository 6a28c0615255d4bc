"""Optimal locally correct (OLC) endpoints.

The upper-tail construction fixes ``u_n = 1`` and walks downwards: given
``u_i``, the next endpoint ``u_{i-1}`` is the unique point below ``u_i`` for
which the average of ``P(X >= i | p)`` over ``(u_{i-1}, u_i)`` equals the
nominal level ``1 - alpha``. The lower tail mirrors this, starting from
``l_0 = 0`` and averaging ``P(X <= i | p)`` over ``(l_i, l_{i+1})``.

Averages are computed from closed-form antiderivatives of the binomial tails,
so each step of the search costs a couple of incomplete-beta evaluations.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ._roots import bisect_root
from .exceptions import DomainError
from .special import _check_n, binom_cdf, binom_sf, tail_integral_lower, tail_integral_upper

__all__ = [
    "AlphaRangeWarning",
    "OlcSolveTrace",
    "solve_upper",
    "solve_lower",
    "solve_upper_from",
    "ALPHA_VALID_RANGE",
]

#: Open range of one-tail alpha over which each step is guaranteed a unique root.
ALPHA_VALID_RANGE = (0.0001, 0.27)

BRACKET_EPS = 1e-15
XTOL = 1e-12
MAXITER = 300


class AlphaRangeWarning(UserWarning):
    """alpha lies outside the range where the OLC recursion is known to be solvable."""


@dataclass(frozen=True)
class OlcSolveTrace:
    """Result of one OLC solve: endpoints plus per-step diagnostics.

    ``residuals[k]`` and ``iterations[k]`` refer to the step that produced
    ``endpoints[k]`` (the anchor endpoint has residual 0 and 0 iterations).
    """

    n: int
    alpha: float
    tail: str
    endpoints: tuple
    residuals: tuple
    iterations: tuple


def _check_alpha(alpha):
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must lie in (0, 0.5), got {alpha!r}")
    lo, hi = ALPHA_VALID_RANGE
    if not lo < alpha < hi:
        warnings.warn(
            f"alpha={alpha} is outside {ALPHA_VALID_RANGE}; the OLC recursion may have no solution",
            AlphaRangeWarning,
            stacklevel=3,
        )
    return float(alpha)


def _upper_step(n, i, u_i, target):
    """Solve for u_{i-1} given u_i; returns (root, |residual|, iterations)."""
    g_hi = tail_integral_upper(n, i, u_i)

    def avg_minus_target(t):
        return (g_hi - tail_integral_upper(n, i, t)) / (u_i - t) - target

    # one-sided limit of the average as t -> u_i is the integrand at u_i
    f_hi = binom_sf(n, i, u_i) - target
    root, iters = bisect_root(
        avg_minus_target,
        BRACKET_EPS,
        u_i,
        xtol=XTOL,
        maxiter=MAXITER,
        f_hi=f_hi,
        what=f"OLC upper step n={n}, i={i}",
    )
    return root, abs(avg_minus_target(root)), iters


def _lower_step(n, i, l_i, target):
    """Solve for l_{i+1} given l_i."""
    h_lo = tail_integral_lower(n, i, l_i)

    def avg_minus_target(s):
        return (tail_integral_lower(n, i, s) - h_lo) / (s - l_i) - target

    f_lo = binom_cdf(n, i, l_i) - target
    root, iters = bisect_root(
        avg_minus_target,
        l_i,
        1.0 - BRACKET_EPS,
        xtol=XTOL,
        maxiter=MAXITER,
        f_lo=f_lo,
        what=f"OLC lower step n={n}, i={i}",
    )
    return root, abs(avg_minus_target(root)), iters


def _solve_down(n, alpha, j, u_j):
    target = 1.0 - alpha
    endpoints = [0.0] * (j + 1)
    residuals = [0.0] * (j + 1)
    iterations = [0] * (j + 1)
    endpoints[j] = float(u_j)
    for i in range(j, 0, -1):
        endpoints[i - 1], residuals[i - 1], iterations[i - 1] = _upper_step(
            n, i, endpoints[i], target
        )
    return endpoints, residuals, iterations


def solve_upper(n, alpha):
    """Upper-tail OLC endpoints ``u_0 < ... < u_n = 1`` at level ``1 - alpha``.

    Raises
    ------
    BracketError
        When a step has no root below the previous endpoint, which happens
        for alpha too large (roughly above 0.27).
    NonConvergenceError
        If bisection exhausts its iteration budget.
    """
    n = _check_n(n)
    alpha = _check_alpha(alpha)
    endpoints, residuals, iterations = _solve_down(n, alpha, n, 1.0)
    return OlcSolveTrace(n, alpha, "upper", tuple(endpoints), tuple(residuals), tuple(iterations))


def solve_lower(n, alpha):
    """Lower-tail OLC endpoints ``0 = l_0 < ... < l_n < 1`` at level ``1 - alpha``."""
    n = _check_n(n)
    alpha = _check_alpha(alpha)
    target = 1.0 - alpha
    endpoints = [0.0] * (n + 1)
    residuals = [0.0] * (n + 1)
    iterations = [0] * (n + 1)
    for i in range(n):
        endpoints[i + 1], residuals[i + 1], iterations[i + 1] = _lower_step(
            n, i, endpoints[i], target
        )
    return OlcSolveTrace(n, alpha, "lower", tuple(endpoints), tuple(residuals), tuple(iterations))


def solve_upper_from(n, alpha, j, u_j):
    """Run the downward recursion from an arbitrary anchor ``u_j``.

    Returns the list ``[u_0, ..., u_j]``.
    """
    n = _check_n(n)
    alpha = _check_alpha(alpha)
    if int(j) != j or not 0 <= j <= n:
        raise DomainError(f"j must be an integer in [0, {n}], got {j!r}")
    if not 0.0 < u_j <= 1.0:
        raise DomainError(f"anchor u_j must lie in (0, 1], got {u_j!r}")
    endpoints, _, _ = _solve_down(n, alpha, int(j), u_j)
    return endpoints
