import json

import pytest

from binomlcc import verification as v

SMALL = range(1, 13)


@pytest.mark.parametrize(
    "check",
    [
        lambda: v.check_alpha_monotonicity(SMALL),
        lambda: v.check_olc_smallest_ael(SMALL),
        lambda: v.check_n_monotonicity(SMALL),
        lambda: v.check_midp_lcc(SMALL, probe_alpha=None),
        lambda: v.check_midp_pointwise_optimal(ns=(8,), alphas=(0.05,), n_points=400),
        lambda: v.check_olc_gap_averages(SMALL),
        lambda: v.check_lcc_classification(),
        lambda: v.check_equivariance(SMALL),
        lambda: v.check_nesting(SMALL),
        lambda: v.check_monotonicity_x(SMALL),
        lambda: v.check_olc_reflection(SMALL),
        lambda: v.check_jeffreys_within_cp(SMALL),
        lambda: v.check_cp_tail_equations(SMALL),
        lambda: v.check_fixture_checksums(),
        lambda: v.check_golden_equivariance(),
        lambda: v.check_ael_ordering(ns=(8,), alphas=(0.05,)),
        lambda: v.check_rmse_ordering(ns=(8,), alphas=(0.05,)),
    ],
)
def test_checks_pass_on_small_grids(check):
    result = check()
    assert result.passed, result


def test_n1_ael_tie_is_reported_not_failed():
    result = v.check_olc_smallest_ael(range(1, 2))
    assert result.passed
    assert any("tie" in note for note in result.notes)
    assert "implemented" in result.scope


def test_midp_probe_is_not_asserted():
    result = v.check_midp_lcc(range(1, 8), alphas=(0.05,), probe_alpha=0.25)
    assert result.passed
    assert "not asserted" in result.notes[0]


def test_pointwise_check_excludes_wald():
    result = v.check_midp_pointwise_optimal(ns=(8,), alphas=(0.025,), n_points=200)
    assert "wald" in result.notes[0]
    assert "class" in result.scope


def test_failing_check_reports_location():
    # mid-p is not LCC at alpha = 0.25 once n >= 3
    result = v.check_midp_lcc(range(3, 5), alphas=(0.25,), probe_alpha=None)
    assert not result.passed
    assert result.location.startswith("n=3")


@pytest.mark.parametrize("value,expected", [(0.12345, 0.1235), (0.12344999, 0.1234), (-0.00005, -0.0001), (0.5, 0.5)])
def test_round_half_away(value, expected):
    assert v.round_half_away(value, 4) == expected


def test_golden_loader():
    rows = v.load_golden("tableA1.csv")
    assert len(rows) == 270
    assert rows[0] == {"n": "1", "x": "0", "lower": "0.0000", "upper": "0.9500"}


def test_reproduce_appendix_cells():
    diffs = [d for d in v.reproduce_tables() if d.table in ("A1", "A2")]
    assert len(diffs) == 1080
    assert all(d.passed for d in diffs)
    assert max(d.abs_diff for d in diffs) <= 1e-4 + 1e-12


def test_report_serialisation_is_deterministic():
    def build():
        checks = [v.check_lcc_classification(), v.check_cp_tail_equations(range(1, 4))]
        diffs = [v.GoldenDiff("A1", "n=1,x=0,lower", 0.0, 0.0, 0.0, 1e-4, True)]
        return v.VerificationReport(checks, diffs)

    a, b = build(), build()
    assert a.to_json() == b.to_json()
    data = json.loads(a.to_json())
    assert data["schema_version"] == v.SCHEMA_VERSION
    assert data["all_passed"] is True
    assert "ALL CHECKS PASSED" in a.summary()


def test_summary_lists_failed_golden_cells():
    checks = [v.CheckResult("x", "grid", False, 1.0, "here")]
    diffs = [v.GoldenDiff("2", "alpha=0.05,n=8,wald", 0.2249, 0.2248, 1e-4, 1e-5, False)]
    text = v.VerificationReport(checks, diffs).summary()
    assert "[FAIL] x" in text and "alpha=0.05,n=8,wald" in text and "SOME CHECKS FAILED" in text
