"""Endpoint tables and equal-tail intervals for seven binomial interval methods.

A one-tail endpoint table holds ``u_0..u_n`` (upper tail) or ``l_0..l_n``
(lower tail) for fixed ``n`` and one-tail error rate ``alpha``. Two-sided
``1 - 2*alpha`` intervals pair ``l_x`` from the lower table with ``u_x`` from
the upper table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import olc
from ._roots import bisect_root
from .exceptions import DomainError
from .special import _check_n, binom_cdf, binom_pmf, normal_quantile, reg_inc_beta_inv

__all__ = [
    "Method",
    "Tail",
    "EndpointTable",
    "IntervalEstimate",
    "clopper_pearson_table",
    "midp_table",
    "wald_table",
    "agresti_coull_table",
    "wilson_table",
    "jeffreys_table",
    "olc_table",
    "endpoint_table",
    "two_tail_interval",
    "confidence_to_alpha",
]

MIDP_XTOL = 1e-12
MIDP_MAXITER = 200


class Method(str, Enum):
    OLC = "olc"
    CLOPPER_PEARSON = "clopper-pearson"
    MIDP = "mid-p"
    WALD = "wald"
    AGRESTI_COULL = "agresti-coull"
    WILSON = "wilson"
    JEFFREYS = "jeffreys"

    @classmethod
    def parse(cls, name):
        """Accept enum members, values, or loose spellings (``"ClopperPearson"``, ``"midp"``)."""
        if isinstance(name, cls):
            return name
        key = str(name).lower().replace("-", "").replace("_", "").replace(" ", "")
        for member in cls:
            if key in (member.value.replace("-", ""), member.name.lower().replace("_", "")):
                return member
        aliases = {"cp": cls.CLOPPER_PEARSON, "ac": cls.AGRESTI_COULL, "score": cls.WILSON}
        if key in aliases:
            return aliases[key]
        raise DomainError(f"unknown method {name!r}; choose from {[m.value for m in cls]}")


class Tail(str, Enum):
    UPPER = "upper"
    LOWER = "lower"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise DomainError(f"tail must be 'upper' or 'lower', got {name!r}") from None


@dataclass(frozen=True)
class EndpointTable:
    """One-tail endpoints of a method for fixed ``(n, alpha, tail)``.

    ``endpoints[x]`` is ``u_x`` for an upper table and ``l_x`` for a lower one.
    Wald endpoints are stored raw; ``violates_constraints`` flags tables that
    break the ordering/bounds a sensible estimator should satisfy.
    """

    method: Method
    n: int
    alpha: float
    tail: Tail
    endpoints: tuple

    def __len__(self):
        return len(self.endpoints)

    def __getitem__(self, x):
        return self.endpoints[x]

    def as_array(self):
        return np.asarray(self.endpoints, dtype=float)

    @property
    def is_ordered(self):
        """Strict ordering and bounds: ``0 < u_0 < ... < u_n <= 1`` or ``0 = l_0 < ... < l_n < 1``."""
        e = self.endpoints
        increasing = all(a < b for a, b in zip(e, e[1:]))
        if self.tail is Tail.UPPER:
            return increasing and e[0] > 0.0 and e[-1] <= 1.0
        return increasing and e[0] == 0.0 and e[-1] < 1.0

    @property
    def violates_constraints(self):
        """True when any endpoint falls outside [0, 1] or the sequence decreases."""
        e = self.endpoints
        out_of_range = any(v < 0.0 or v > 1.0 for v in e)
        decreasing = any(b < a for a, b in zip(e, e[1:]))
        return out_of_range or decreasing


@dataclass(frozen=True)
class IntervalEstimate:
    method: Method
    n: int
    x: int
    confidence: float
    lower: float
    upper: float

    @property
    def alpha(self):
        """One-tail error rate."""
        return confidence_to_alpha(self.confidence)


def confidence_to_alpha(confidence):
    """Two-tail confidence ``1 - 2*alpha`` to one-tail ``alpha``."""
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence!r}")
    return (1.0 - confidence) / 2.0


def _validate(n, alpha, tail):
    n = _check_n(n)
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must lie in (0, 0.5), got {alpha!r}")
    return n, float(alpha), Tail.parse(tail)


def clopper_pearson_table(n, alpha, tail):
    """Exact (test-inversion) endpoints, from beta quantiles."""
    n, alpha, tail = _validate(n, alpha, tail)
    if tail is Tail.UPPER:
        # P(X <= i | u_i) = alpha  <=>  I_{u_i}(i+1, n-i) = 1 - alpha
        ends = [reg_inc_beta_inv(i + 1, n - i, 1.0 - alpha) for i in range(n)] + [1.0]
    else:
        # P(X >= i | l_i) = alpha  <=>  I_{l_i}(i, n-i+1) = alpha
        ends = [0.0] + [reg_inc_beta_inv(i, n - i + 1, alpha) for i in range(1, n + 1)]
    return EndpointTable(Method.CLOPPER_PEARSON, n, alpha, tail, tuple(ends))


def _midp_upper(n, i, alpha):
    def f(u):
        return binom_cdf(n, i - 1, u) + 0.5 * binom_pmf(n, i, u) - alpha

    root, _ = bisect_root(f, 0.0, 1.0, xtol=MIDP_XTOL, maxiter=MIDP_MAXITER,
                          what=f"mid-p upper n={n}, i={i}")
    return root


def _midp_lower(n, i, alpha):
    def f(p):
        return (1.0 - binom_cdf(n, i, p)) + 0.5 * binom_pmf(n, i, p) - alpha

    root, _ = bisect_root(f, 0.0, 1.0, xtol=MIDP_XTOL, maxiter=MIDP_MAXITER,
                          what=f"mid-p lower n={n}, i={i}")
    return root


def midp_table(n, alpha, tail):
    """Mid-p endpoints: the observed outcome counts half in the tail equation.

    ``u_n = 1`` and ``l_0 = 0`` are fixed by definition (their tail equations
    have no root in (0, 1)).
    """
    n, alpha, tail = _validate(n, alpha, tail)
    if tail is Tail.UPPER:
        ends = [_midp_upper(n, i, alpha) for i in range(n)] + [1.0]
    else:
        ends = [0.0] + [_midp_lower(n, i, alpha) for i in range(1, n + 1)]
    return EndpointTable(Method.MIDP, n, alpha, tail, tuple(ends))


def wald_table(n, alpha, tail):
    """Normal-approximation endpoints ``phat +/- z*sqrt(phat(1-phat)/n)``, unclipped."""
    n, alpha, tail = _validate(n, alpha, tail)
    z = normal_quantile(1.0 - alpha)
    sign = 1.0 if tail is Tail.UPPER else -1.0
    ends = []
    for x in range(n + 1):
        phat = x / n
        ends.append(phat + sign * z * math.sqrt(phat * (1.0 - phat) / n))
    return EndpointTable(Method.WALD, n, alpha, tail, tuple(ends))


def agresti_coull_table(n, alpha, tail):
    """Adjusted-Wald endpoints centred at ``(x + z^2/2) / (n + z^2)``, clipped to [0, 1].

    This is the general form; adding exactly two successes and two failures
    is its special case at ``z = 2``.
    """
    n, alpha, tail = _validate(n, alpha, tail)
    z = normal_quantile(1.0 - alpha)
    z2 = z * z
    ntilde = n + z2
    sign = 1.0 if tail is Tail.UPPER else -1.0
    ends = []
    for x in range(n + 1):
        ptilde = (x + z2 / 2.0) / ntilde
        e = ptilde + sign * z * math.sqrt(ptilde * (1.0 - ptilde) / ntilde)
        ends.append(min(1.0, max(0.0, e)))
    return EndpointTable(Method.AGRESTI_COULL, n, alpha, tail, tuple(ends))


def wilson_table(n, alpha, tail):
    """Score-test inversion endpoints."""
    n, alpha, tail = _validate(n, alpha, tail)
    z = normal_quantile(1.0 - alpha)
    z2 = z * z
    denom = n + z2
    sign = 1.0 if tail is Tail.UPPER else -1.0
    ends = []
    for x in range(n + 1):
        centre = (x + z2 / 2.0) / denom
        half = z / denom * math.sqrt(x * (n - x) / n + z2 / 4.0)
        ends.append(min(1.0, max(0.0, centre + sign * half)))
    # the formula gives exactly l_0 = 0 and u_n = 1; drop the rounding spill
    if tail is Tail.UPPER:
        ends[n] = 1.0
    else:
        ends[0] = 0.0
    return EndpointTable(Method.WILSON, n, alpha, tail, tuple(ends))


def jeffreys_table(n, alpha, tail):
    """Equal-tail credible limits under a Beta(1/2, 1/2) prior, with ``l_0 = 0``, ``u_n = 1``."""
    n, alpha, tail = _validate(n, alpha, tail)
    level = 1.0 - alpha if tail is Tail.UPPER else alpha
    ends = [reg_inc_beta_inv(x + 0.5, n - x + 0.5, level) for x in range(n + 1)]
    if tail is Tail.UPPER:
        ends[n] = 1.0
    else:
        ends[0] = 0.0
    return EndpointTable(Method.JEFFREYS, n, alpha, tail, tuple(ends))


def olc_table(n, alpha, tail):
    n, alpha, tail = _validate(n, alpha, tail)
    if tail is Tail.UPPER:
        trace = olc.solve_upper(n, alpha)
    else:
        trace = olc.solve_lower(n, alpha)
    return EndpointTable(Method.OLC, n, alpha, tail, trace.endpoints)


_BUILDERS = {
    Method.OLC: olc_table,
    Method.CLOPPER_PEARSON: clopper_pearson_table,
    Method.MIDP: midp_table,
    Method.WALD: wald_table,
    Method.AGRESTI_COULL: agresti_coull_table,
    Method.WILSON: wilson_table,
    Method.JEFFREYS: jeffreys_table,
}


@lru_cache(maxsize=4096)
def _cached_table(method, n, alpha, tail):
    return _BUILDERS[method](n, alpha, tail)


def endpoint_table(method, n, alpha, tail="upper"):
    """Endpoint table for any method; results are memoised (tables are immutable)."""
    method = Method.parse(method)
    n, alpha, tail = _validate(n, alpha, tail)
    return _cached_table(method, n, alpha, tail)


def two_tail_interval(method, n, x, alpha_two_tail):
    """Equal-tail interval ``(l_x, u_x)`` with confidence ``1 - alpha_two_tail``."""
    method = Method.parse(method)
    n = _check_n(n)
    if int(x) != x or not 0 <= x <= n:
        raise DomainError(f"x must be an integer in [0, {n}], got {x!r}")
    if not 0.0 < alpha_two_tail < 1.0:
        raise DomainError(f"alpha_two_tail must lie in (0, 1), got {alpha_two_tail!r}")
    alpha = alpha_two_tail / 2.0
    x = int(x)
    lower = endpoint_table(method, n, alpha, Tail.LOWER)[x]
    upper = endpoint_table(method, n, alpha, Tail.UPPER)[x]
    return IntervalEstimate(method, n, x, 1.0 - alpha_two_tail, lower, upper)
