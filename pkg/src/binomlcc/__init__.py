"""Binomial-proportion intervals with locally correct coverage.

Seven interval methods (OLC, Clopper-Pearson, mid-p, Wald, Agresti-Coull,
Wilson, Jeffreys), exact coverage and length metrics, and a verification
harness for their properties.
"""

from .coverage import (
    CoverageProfile,
    LccReport,
    MethodMetrics,
    ael,
    coverage_at,
    coverage_grid,
    coverage_integral,
    coverage_profile,
    coverage_rmse,
    expected_length,
    interspike_average,
    is_lcc,
    method_metrics,
    truncated_average_coverage,
)
from .estimator import BinomialIntervalEstimator
from .estimators import (
    EndpointTable,
    IntervalEstimate,
    Method,
    Tail,
    confidence_to_alpha,
    endpoint_table,
    two_tail_interval,
)
from .exceptions import BracketError, DegenerateGapError, DomainError, NonConvergenceError
from .olc import AlphaRangeWarning, solve_lower, solve_upper
from .special import (
    binom_cdf,
    binom_pmf,
    binom_sf,
    normal_quantile,
    reg_inc_beta,
    reg_inc_beta_inv,
    tail_integral_lower,
    tail_integral_upper,
)
from .verification import VerificationReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "AlphaRangeWarning",
    "BinomialIntervalEstimator",
    "BracketError",
    "CoverageProfile",
    "DegenerateGapError",
    "DomainError",
    "EndpointTable",
    "IntervalEstimate",
    "LccReport",
    "Method",
    "MethodMetrics",
    "NonConvergenceError",
    "Tail",
    "VerificationReport",
    "ael",
    "binom_cdf",
    "binom_pmf",
    "binom_sf",
    "confidence_to_alpha",
    "coverage_at",
    "coverage_grid",
    "coverage_integral",
    "coverage_profile",
    "coverage_rmse",
    "endpoint_table",
    "expected_length",
    "interspike_average",
    "is_lcc",
    "method_metrics",
    "normal_quantile",
    "reg_inc_beta",
    "reg_inc_beta_inv",
    "run_verification",
    "solve_lower",
    "solve_upper",
    "tail_integral_lower",
    "tail_integral_upper",
    "truncated_average_coverage",
    "two_tail_interval",
]
