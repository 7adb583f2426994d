"""Verification driver: report shape, reproducibility, fault tolerance."""

import json

import pytest

from bregfar import (SuiteSizes, Tolerances, report_to_json,
                     run_verification)


@pytest.fixture(scope="module")
def quick_quiet():
    report, all_passed = run_verification(seed=11, sizes=SuiteSizes.quick())
    return report, all_passed


class TestReportShape:
    def test_all_suites_pass_at_quick_scale(self, quick_quiet):
        report, all_passed = quick_quiet
        assert all_passed is True
        assert report["all_passed"] is True
        assert all(s["pass_count"] == s["instances_run"]
                   for s in report["suites"])

    def test_suite_names_are_unique_and_counted(self, quick_quiet):
        report, _ = quick_quiet
        names = [s["check_name"] for s in report["suites"]]
        assert len(names) == len(set(names)) == 19

    def test_invariants_on_every_entry(self, quick_quiet):
        report, _ = quick_quiet
        for suite in report["suites"]:
            assert suite["pass_count"] <= suite["instances_run"]
            assert suite["instances_run"] > 0
            assert isinstance(suite["worst_residual"], float)
            assert "seed" in suite

    def test_json_is_sorted_and_stable(self, quick_quiet):
        report, _ = quick_quiet
        text = report_to_json(report)
        parsed = json.loads(text)
        assert parsed == json.loads(report_to_json(report))
        assert text == json.dumps(parsed, sort_keys=True, indent=2) + "\n"


class TestReproducibility:
    def test_same_seed_same_bytes(self):
        first, _ = run_verification(seed=5, sizes=SuiteSizes.quick())
        second, _ = run_verification(seed=5, sizes=SuiteSizes.quick())
        assert report_to_json(first) == report_to_json(second)


class TestFaultTolerance:
    def test_degenerate_tie_tolerance_fails_characterization(self):
        report, all_passed = run_verification(
            seed=11, sizes=SuiteSizes.quick(), tol=Tolerances(eps_tie=1.0))
        assert all_passed is False
        by_name = {s["check_name"]: s for s in report["suites"]}
        bad = by_name["characterization_equivalence"]
        assert bad["pass_count"] < bad["instances_run"]
        # a crashing suite is reported as failed, not raised
        aborted = [s for s in report["suites"]
                   if s["detail"].startswith("suite aborted")]
        for suite in aborted:
            assert suite["pass_count"] == 0
