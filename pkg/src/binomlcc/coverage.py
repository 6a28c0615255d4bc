"""Coverage functions and evaluation metrics for endpoint tables.

For an upper table the interval ``(0, u_x)`` covers ``p`` when ``p <= u_x``;
for a lower table ``(l_x, 1)`` covers ``p`` when ``l_x < p``. Coverage is the
binomial probability of the covering outcomes, a piecewise polynomial in ``p``
with jumps ("spikes") at the endpoints.

Integrals of coverage are exact: each outcome contributes
``int pmf(x | p) dp = I_q(x + 1, n - x + 1) / (n + 1)``, which handles tables
of any shape (including unordered Wald tables). Ordered tables additionally
get the per-gap averages from the tail antiderivatives in :mod:`.special`.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

from .estimators import EndpointTable, Method, Tail, endpoint_table
from .exceptions import DegenerateGapError, DomainError
from .special import (
    binom_cdf,
    binom_pmf,
    binom_pmf_grid,
    binom_sf,
    reg_inc_beta,
    tail_integral_lower,
    tail_integral_upper,
)

__all__ = [
    "CoverageProfile",
    "LccReport",
    "TruncatedCoverage",
    "MethodMetrics",
    "coverage_at",
    "coverage_grid",
    "coverage_integral",
    "interspike_average",
    "coverage_profile",
    "is_lcc",
    "truncated_average_coverage",
    "coverage_rmse",
    "expected_length",
    "expected_length_tables",
    "ael",
    "ael_tables",
    "method_metrics",
]

LCC_TOL = 1e-10


def _clip01(v):
    return min(1.0, max(0.0, v))


def _is_nondecreasing(e):
    return all(a <= b for a, b in zip(e, e[1:]))


def coverage_at(table: EndpointTable, p):
    """Coverage probability of the table's one-sided intervals at ``p``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    n, e = table.n, table.endpoints
    if _is_nondecreasing(e):
        if table.tail is Tail.UPPER:
            # first index with u_i >= p; outcomes i..n cover
            i = bisect.bisect_left(e, p)
            return binom_sf(n, i, p)
        # number of l_x strictly below p; outcomes 0..k-1 cover
        k = bisect.bisect_left(e, p)
        return binom_cdf(n, k - 1, p)
    if table.tail is Tail.UPPER:
        return sum(binom_pmf(n, x, p) for x in range(n + 1) if p <= e[x])
    return sum(binom_pmf(n, x, p) for x in range(n + 1) if e[x] < p)


def coverage_grid(table: EndpointTable, p):
    """Vectorised coverage at an array of ``p`` values."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    e = table.as_array()
    pmf = binom_pmf_grid(table.n, p)
    if table.tail is Tail.UPPER:
        covers = p[:, None] <= e[None, :]
    else:
        covers = e[None, :] < p[:, None]
    return np.where(covers, pmf, 0.0).sum(axis=1)


def _pmf_integral(n, x, q):
    # int_0^q pmf(x | p) dp
    return reg_inc_beta(x + 1, n - x + 1, q) / (n + 1)


def coverage_integral(table: EndpointTable, a, b):
    """Exact ``int_a^b C(p) dp`` for ``0 <= a <= b <= 1``."""
    if not 0.0 <= a <= b <= 1.0:
        raise DomainError(f"need 0 <= a <= b <= 1, got a={a!r}, b={b!r}")
    n = table.n
    total = 0.0
    for x, ex in enumerate(table.endpoints):
        ex = _clip01(ex)
        if table.tail is Tail.UPPER:
            hi = min(b, ex)
            if hi > a:
                total += _pmf_integral(n, x, hi) - _pmf_integral(n, x, a)
        else:
            lo = max(a, ex)
            if b > lo:
                total += _pmf_integral(n, x, b) - _pmf_integral(n, x, lo)
    return total


def interspike_average(table: EndpointTable, i):
    """Average coverage over one gap between consecutive spikes.

    Upper tables: gap ``(u_{i-1}, u_i)`` for ``i = 1..n``. Lower tables: gap
    ``(l_i, l_{i+1})`` for ``i = 0..n-1``.
    """
    n, e = table.n, table.endpoints
    if table.tail is Tail.UPPER:
        if not 1 <= i <= n:
            raise DomainError(f"upper gap index must lie in [1, {n}], got {i!r}")
        a, b = _clip01(e[i - 1]), _clip01(e[i])
        if not b > a:
            raise DegenerateGapError(f"u_{i - 1} = {e[i - 1]!r} and u_{i} = {e[i]!r} give no gap")
        return (tail_integral_upper(n, i, b) - tail_integral_upper(n, i, a)) / (b - a)
    if not 0 <= i <= n - 1:
        raise DomainError(f"lower gap index must lie in [0, {n - 1}], got {i!r}")
    a, b = _clip01(e[i]), _clip01(e[i + 1])
    if not b > a:
        raise DegenerateGapError(f"l_{i} = {e[i]!r} and l_{i + 1} = {e[i + 1]!r} give no gap")
    return (tail_integral_lower(n, i, b) - tail_integral_lower(n, i, a)) / (b - a)


@dataclass(frozen=True)
class CoverageProfile:
    """Spike structure of a coverage function.

    ``spikes`` are the distinct endpoints inside [0, 1], ``drops[k]`` is the
    size of the coverage jump at ``spikes[k]``, and ``interspike_averages[k]``
    is the mean coverage on ``(spikes[k], spikes[k + 1])``.
    """

    table: EndpointTable
    spikes: tuple
    drops: tuple
    interspike_averages: tuple


def coverage_profile(table: EndpointTable):
    n = table.n
    clipped = [_clip01(v) for v in table.endpoints]
    spikes = sorted(set(clipped))
    drops = []
    for s in spikes:
        drops.append(sum(binom_pmf(n, x, s) for x in range(n + 1) if clipped[x] == s))
    if table.is_ordered:
        if table.tail is Tail.UPPER:
            averages = [interspike_average(table, i) for i in range(1, n + 1)]
        else:
            averages = [interspike_average(table, i) for i in range(n)]
    else:
        averages = [
            coverage_integral(table, a, b) / (b - a) for a, b in zip(spikes, spikes[1:])
        ]
    return CoverageProfile(table, tuple(spikes), tuple(drops), tuple(averages))


@dataclass(frozen=True)
class LccReport:
    is_lcc: bool
    reason: str | None
    gap_averages: tuple = ()
    failing_gaps: tuple = ()

    def __bool__(self):
        return self.is_lcc


def is_lcc(table: EndpointTable, tol=LCC_TOL):
    """Whether every inter-spike average coverage reaches ``1 - alpha`` (within ``tol``)."""
    if not table.is_ordered:
        return LccReport(False, "endpoints are not strictly ordered within bounds")
    n = table.n
    target = 1.0 - table.alpha
    if table.tail is Tail.UPPER:
        gaps = range(1, n + 1)
    else:
        gaps = range(n)
    averages = tuple(interspike_average(table, i) for i in gaps)
    failing = tuple(i for i, avg in zip(gaps, averages) if avg < target - tol)
    reason = None
    if table.tail is Tail.UPPER and table.endpoints[-1] != 1.0:
        reason = "u_n != 1"
    elif failing:
        reason = f"{len(failing)} gap(s) average below {target}"
    return LccReport(reason is None, reason, averages, failing)


@dataclass(frozen=True)
class TruncatedCoverage:
    t_u: float
    u0: float

    @property
    def full_range_average(self):
        """Average one-tail coverage over (0, 1)."""
        return (1.0 - self.u0) * self.t_u + self.u0

    @property
    def two_tail_average(self):
        """Average two-tail coverage over (0, 1), assuming equivariant tails."""
        return 2.0 * self.full_range_average - 1.0


def _require_upper(table):
    if table.tail is not Tail.UPPER:
        raise DomainError("metric is defined for upper-tail tables")


def truncated_average_coverage(table: EndpointTable):
    """Mean coverage over ``(u_0, 1)``, where coverage is not trivially 1."""
    _require_upper(table)
    u0 = _clip01(table.endpoints[0])
    if u0 >= 1.0:
        raise DegenerateGapError("u_0 = 1 leaves no range to average over")
    return TruncatedCoverage(coverage_integral(table, u0, 1.0) / (1.0 - u0), u0)


def _segments(table):
    u0 = _clip01(table.endpoints[0])
    pts = sorted({u0, 1.0} | {_clip01(v) for v in table.endpoints if u0 < v < 1.0})
    return [(a, b) for a, b in zip(pts, pts[1:]) if b > a]


def coverage_rmse(table: EndpointTable):
    """Root-mean-square of ``C(p) - (1 - alpha)`` over ``(u_0, 1)``.

    Coverage is a polynomial of degree <= n between spikes, so Gauss-Legendre
    with ``n + 2`` nodes per gap integrates the square exactly.
    """
    _require_upper(table)
    u0 = _clip01(table.endpoints[0])
    if u0 >= 1.0:
        raise DegenerateGapError("u_0 = 1 leaves no range to average over")
    nodes, weights = np.polynomial.legendre.leggauss(table.n + 2)
    target = 1.0 - table.alpha
    total = 0.0
    for a, b in _segments(table):
        half, mid = 0.5 * (b - a), 0.5 * (a + b)
        p = mid + half * nodes
        dev = coverage_grid(table, p) - target
        total += half * float(np.dot(weights, dev * dev))
    return float(np.sqrt(total / (1.0 - u0)))


def expected_length_tables(lower: EndpointTable | None, upper: EndpointTable | None, p):
    """``sum_x (u_x - l_x) pmf(x | p)`` with endpoints clipped to [0, 1].

    Pass ``lower=None`` for upper-tail intervals (``l_x = 0``) and
    ``upper=None`` for lower-tail intervals (``u_x = 1``).
    """
    if lower is None and upper is None:
        raise DomainError("need at least one table")
    n = (lower or upper).n
    lengths = _lengths(lower, upper, n)
    p = np.asarray(p, dtype=float)
    out = binom_pmf_grid(n, np.atleast_1d(p)) @ lengths
    return float(out[0]) if p.ndim == 0 else out


def _lengths(lower, upper, n):
    u = np.clip(upper.as_array(), 0, 1) if upper is not None else np.ones(n + 1)
    l = np.clip(lower.as_array(), 0, 1) if lower is not None else np.zeros(n + 1)
    return u - l


def ael_tables(lower: EndpointTable | None, upper: EndpointTable | None):
    """Average expected length over ``p ~ U(0, 1)``: ``sum_x (u_x - l_x) / (n + 1)``."""
    if lower is None and upper is None:
        raise DomainError("need at least one table")
    n = (lower or upper).n
    return float(_lengths(lower, upper, n).sum() / (n + 1))


def _two_tail_tables(method, n, alpha_two_tail):
    if not 0.0 < alpha_two_tail < 1.0:
        raise DomainError(f"alpha_two_tail must lie in (0, 1), got {alpha_two_tail!r}")
    alpha = alpha_two_tail / 2.0
    return endpoint_table(method, n, alpha, Tail.LOWER), endpoint_table(method, n, alpha, Tail.UPPER)


def expected_length(method, n, alpha_two_tail, p):
    """Expected length ``L_n(p)`` of the method's ``1 - alpha_two_tail`` equal-tail intervals."""
    return expected_length_tables(*_two_tail_tables(method, n, alpha_two_tail), p)


def ael(method, n, alpha_two_tail):
    """Average expected length of the method's equal-tail intervals."""
    return ael_tables(*_two_tail_tables(method, n, alpha_two_tail))


@dataclass(frozen=True)
class MethodMetrics:
    method: Method
    n: int
    alpha: float
    t_u: float
    u0: float
    rmse: float
    ael: float
    length_curve: tuple = field(default=(), repr=False)


def method_metrics(method, n, alpha, length_samples=0):
    """All upper-tail and two-tail summaries for one method at one-tail ``alpha``.

    ``length_curve`` holds ``(p, L_n(p))`` pairs at ``length_samples`` evenly
    spaced interior points (empty by default).
    """
    method = Method.parse(method)
    upper = endpoint_table(method, n, alpha, Tail.UPPER)
    lower = endpoint_table(method, n, alpha, Tail.LOWER)
    tc = truncated_average_coverage(upper)
    curve = ()
    if length_samples:
        p = (np.arange(length_samples) + 0.5) / length_samples
        curve = tuple(zip(p.tolist(), expected_length_tables(lower, upper, p).tolist()))
    return MethodMetrics(
        method, upper.n, upper.alpha, tc.t_u, tc.u0, coverage_rmse(upper),
        ael_tables(lower, upper), curve,
    )
