import math

import numpy as np
import pytest
from scipy import stats

from binomlcc.estimators import (
    Method,
    Tail,
    confidence_to_alpha,
    endpoint_table,
    two_tail_interval,
)
from binomlcc.exceptions import DomainError
from binomlcc.special import binom_cdf, binom_pmf, binom_sf


@pytest.mark.parametrize(
    "n,x,conf,lower,upper",
    [
        (10, 3, 0.95, 0.0878, 0.6121),
        (1, 1, 0.95, 0.0500, 1.0000),
        (30, 15, 0.95, 0.3271, 0.6729),
        (7, 4, 0.99, 0.1490, 0.9230),
        (30, 15, 0.99, 0.2778, 0.7222),
    ],
)
def test_olc_appendix_cells(n, x, conf, lower, upper):
    iv = two_tail_interval("olc", n, x, 1 - conf)
    assert iv.lower == pytest.approx(lower, abs=5e-5)
    assert iv.upper == pytest.approx(upper, abs=5e-5)
    assert iv.confidence == pytest.approx(conf)


def test_clopper_pearson_against_scipy_beta():
    n, alpha = 17, 0.025
    up = endpoint_table("cp", n, alpha, "upper")
    low = endpoint_table("cp", n, alpha, "lower")
    for x in range(n):
        assert up[x] == pytest.approx(stats.beta.ppf(1 - alpha, x + 1, n - x), abs=1e-12)
    for x in range(1, n + 1):
        assert low[x] == pytest.approx(stats.beta.ppf(alpha, x, n - x + 1), abs=1e-12)
    assert up[n] == 1.0 and low[0] == 0.0


def test_clopper_pearson_single_trial():
    up = endpoint_table("clopper-pearson", 1, 0.025, "upper")
    assert up[0] == pytest.approx(0.975, abs=1e-12)


def test_midp_tail_equation():
    n, alpha = 20, 0.025
    up = endpoint_table("mid-p", n, alpha, "upper")
    low = endpoint_table("mid-p", n, alpha, "lower")
    for i in range(n):
        assert binom_cdf(n, i - 1, up[i]) + 0.5 * binom_pmf(n, i, up[i]) == pytest.approx(alpha, abs=1e-11)
    for i in range(1, n + 1):
        assert binom_sf(n, i + 1, low[i]) + 0.5 * binom_pmf(n, i, low[i]) == pytest.approx(alpha, abs=1e-11)
    assert up[n] == 1.0 and low[0] == 0.0


def test_wald_is_raw():
    up = endpoint_table("wald", 4, 0.025, "upper")
    low = endpoint_table("wald", 4, 0.025, "lower")
    assert up[0] == 0.0 and low[0] == 0.0
    raw = endpoint_table("wald", 8, 0.005, "upper")
    assert raw[7] > 1.0
    assert raw.violates_constraints
    assert not endpoint_table("olc", 8, 0.005, "upper").violates_constraints


def test_agresti_coull_general_form():
    z = stats.norm.ppf(0.975)
    n, x = 20, 0
    pt = (x + z * z / 2) / (n + z * z)
    expected = pt + z * math.sqrt(pt * (1 - pt) / (n + z * z))
    assert endpoint_table("ac", n, 0.025, "upper")[0] == pytest.approx(expected, abs=1e-14)
    # general form, not the +2/+2 shortcut (which gives 0.194)
    assert endpoint_table("ac", n, 0.025, "upper")[0] == pytest.approx(0.190, abs=1e-3)


def test_wilson_against_closed_form_and_clip():
    z = stats.norm.ppf(0.95)
    n = 12
    up = endpoint_table("wilson", n, 0.05, "upper")
    low = endpoint_table("wilson", n, 0.05, "lower")
    for x in range(n + 1):
        p = x / n
        centre = (p + z * z / (2 * n)) / (1 + z * z / n)
        half = z / (1 + z * z / n) * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
        assert up[x] == pytest.approx(min(1.0, centre + half), abs=1e-13)
        assert low[x] == pytest.approx(max(0.0, centre - half), abs=1e-13)
    assert up[n] == 1.0 and low[0] == 0.0


def test_jeffreys_against_scipy():
    n, alpha = 9, 0.05
    up = endpoint_table("jeffreys", n, alpha, "upper")
    for x in range(n):
        assert up[x] == pytest.approx(stats.beta.ppf(1 - alpha, x + 0.5, n - x + 0.5), abs=1e-12)
    assert up[n] == 1.0
    assert endpoint_table("jeffreys", n, alpha, "lower")[0] == 0.0


@pytest.mark.parametrize("method", [m for m in Method if m is not Method.WALD])
def test_equivariance(method):
    for n in (1, 6, 33):
        up = endpoint_table(method, n, 0.025, Tail.UPPER).as_array()
        low = endpoint_table(method, n, 0.025, Tail.LOWER).as_array()
        np.testing.assert_allclose(low, 1 - up[::-1], atol=1e-10)


@pytest.mark.parametrize("method", list(Method))
def test_tables_shape_and_cache(method):
    t = endpoint_table(method, 15, 0.05)
    assert len(t) == 16 and t.tail is Tail.UPPER
    assert endpoint_table(method.value, 15, 0.05, "upper") is t


def test_is_ordered():
    assert endpoint_table("olc", 10, 0.05, "upper").is_ordered
    assert endpoint_table("olc", 10, 0.05, "lower").is_ordered
    assert not endpoint_table("wald", 10, 0.05, "upper").is_ordered


@pytest.mark.parametrize("name,member", [("OLC", Method.OLC), ("ClopperPearson", Method.CLOPPER_PEARSON),
                                         ("midp", Method.MIDP), ("score", Method.WILSON),
                                         ("agresti_coull", Method.AGRESTI_COULL)])
def test_method_parse(name, member):
    assert Method.parse(name) is member


def test_validation_errors():
    with pytest.raises(DomainError):
        Method.parse("bayes")
    with pytest.raises(DomainError):
        Tail.parse("left")
    with pytest.raises(DomainError):
        endpoint_table("olc", 10, 0.6)
    with pytest.raises(DomainError):
        endpoint_table("olc", 0, 0.05)
    with pytest.raises(DomainError):
        two_tail_interval("olc", 5, 6, 0.05)
    with pytest.raises(DomainError):
        confidence_to_alpha(1.0)


def test_confidence_alpha_round_trip():
    assert confidence_to_alpha(0.95) == pytest.approx(0.025)
    iv = two_tail_interval("wilson", 10, 4, 0.1)
    assert iv.alpha == pytest.approx(0.05)
