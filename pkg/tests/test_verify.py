"""Tests for cqg.core.verify: the invariant suite on built-in and corrupted instances."""

from __future__ import annotations

import dataclasses
import math

import pytest

from cqg.config.constants import SKIP_NO_BRUTE_FORCE, SKIP_NON_KAC, STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED
from cqg.core.errors import InstanceValidationError, InvalidParameterError
from cqg.core.fusion_data import FusionEntry, FusionTable, IrrepInfo
from cqg.core.instances import (
    NormOracle,
    dual_norm_oracle,
    resolve_instance,
    suq2_truncated,
    symmetric_group_s3,
)
from cqg.core.verify import CHECK_IDS, CHECKS, run_suite


def _statuses(report) -> dict[str, str]:
    return {r.check_id: r.status for r in report.checks}


@pytest.fixture(scope="module")
def s3_report(s3_bundle):
    g, norms, brute = s3_bundle
    return run_suite(g, 42, norm_oracle=norms, brute_force=brute)


@pytest.fixture(scope="module")
def suq2_report(suq2):
    return run_suite(suq2, 42, samples=25)


class TestS3:

    def test_all_checks_pass(self, s3_report):
        assert s3_report.ok
        assert set(_statuses(s3_report).values()) == {STATUS_PASS}

    def test_every_registered_check_appears_once(self, s3_report):
        ids = [r.check_id for r in s3_report.checks]
        assert len(ids) == len(set(ids)) == len(CHECKS)
        assert set(ids) == set(CHECK_IDS.values())

    def test_report_metadata(self, s3_report, s3):
        assert s3_report.instance == s3.name
        assert s3_report.seed == 42
        assert s3_report.tolerance == s3.tolerance


class TestSUq2:

    def test_all_checks_pass(self, suq2_report):
        assert suq2_report.violations == []

    def test_plain_characters_are_an_expected_failure(self, suq2_report):
        record = suq2_report.get("l1.plain_character_centrality")
        assert record.expected_failure
        assert record.status == STATUS_PASS
        assert record.witness.startswith("φ^1:")

    def test_projection_separation_witness(self, suq2_report):
        record = suq2_report.get("l2.projection_separation")
        assert record.expected_failure
        assert record.status == STATUS_PASS
        assert "commutator with Λu^1_{01}" in record.witness

    def test_kac_only_checks_are_skipped_with_reason(self, suq2_report):
        for check_id in ("l1.beta1", "l1.kac_characters", "l1.beta1_contractivity"):
            record = suq2_report.get(check_id)
            assert record.status == STATUS_SKIPPED
            assert record.reason == SKIP_NON_KAC

    def test_skipped_checks_carry_reasons(self, suq2_report):
        skipped = [r for r in suq2_report.checks if r.status == STATUS_SKIPPED]
        assert skipped
        assert all(r.reason for r in skipped)


class TestOtherInstances:

    def test_onplus(self, onplus):
        assert run_suite(onplus, 1, samples=5).ok

    def test_dual_s3(self, dual_s3):
        report = run_suite(dual_s3, 3, norm_oracle=dual_norm_oracle(symmetric_group_s3()), samples=10)
        assert report.ok
        assert report.get("oracle.convolution").reason == SKIP_NO_BRUTE_FORCE
        assert report.get("l1.beta1_contractivity").status == STATUS_PASS


class TestFailures:

    def test_corrupted_fusion_names_a_triple(self, s3_bundle):
        g, norms, brute = s3_bundle
        entries = dict(g.fusion.entries)
        entries[("s", "v")] = FusionEntry("s", "v", {"t": 1, "s": 1})
        corrupted = dataclasses.replace(g, fusion=FusionTable(entries))
        report = run_suite(corrupted, 42, norm_oracle=norms, brute_force=brute, samples=5)
        record = report.get("fusion.consistency")
        assert record.status == STATUS_FAIL
        assert record.witness.startswith("associativity: (")
        assert "⊗" in record.witness
        assert not report.ok

    def test_structurally_invalid_instance_raises(self, suq2):
        broken = dataclasses.replace(
            suq2, irreps={**suq2.irreps, "1": IrrepInfo("1", 2, (2.0, 1.0), "1", (1, 0))}
        )
        with pytest.raises(InstanceValidationError) as exc:
            run_suite(broken)
        assert "validate.trace_balance" in {r.check_id for r in exc.value.report.violations}

    @pytest.mark.parametrize("tolerance", [0.0, -1e-9, float("nan")])
    def test_tolerance_must_be_positive(self, suq2, tolerance):
        with pytest.raises(InvalidParameterError):
            run_suite(suq2, tolerance=tolerance)

    @pytest.mark.parametrize("checks", [["l1.matrix_unit"], ["l2.star", "l2.stars"], []])
    def test_check_selection_must_name_registered_checks(self, s3, checks):
        with pytest.raises(InvalidParameterError):
            run_suite(s3, checks=checks)

    @pytest.mark.parametrize("samples", [0, -3])
    def test_samples_must_be_positive(self, s3, samples):
        with pytest.raises(InvalidParameterError):
            run_suite(s3, samples=samples)

    def test_linf_norm_must_be_homogeneous(self, s3_bundle):
        g, norms, brute = s3_bundle
        skewed = NormOracle(norms.l1_norm, lambda x: math.sqrt(norms.linf_norm(x)))
        report = run_suite(
            g, norm_oracle=skewed, brute_force=brute, samples=5, checks=["l1.beta1_contractivity"]
        )
        record = report.get("l1.beta1_contractivity")
        assert record.status == STATUS_FAIL
        assert set(record.details["case"].str.split(": ").str[1]) == {"‖cx‖∞ = |c|‖x‖∞"}

    def test_exceptions_become_failed_records(self, s3, monkeypatch):
        import cqg.core.verify as verify

        def boom(*args, **kwargs):
            raise RuntimeError("kaboom")

        monkeypatch.setattr(verify, "beta2_rank", boom)
        record = run_suite(s3, checks=["l2.beta2_projection"]).get("l2.beta2_projection")
        assert record.status == STATUS_FAIL
        assert "kaboom" in record.witness


class TestDeterminism:

    def test_same_seed_same_report(self, suq2):
        first = run_suite(suq2, 5, samples=5)
        second = run_suite(suq2, 5, samples=5)
        assert first.to_dict() == second.to_dict()

    def test_threads_do_not_change_the_report(self, s3_bundle):
        g, norms, brute = s3_bundle
        serial = run_suite(g, 9, norm_oracle=norms, brute_force=brute, samples=5)
        threaded = run_suite(g, 9, norm_oracle=norms, brute_force=brute, samples=5, workers=4)
        assert serial.to_dict() == threaded.to_dict()

    def test_check_selection(self, s3):
        report = run_suite(s3, checks=["l1.matrix_units", "l2.star"])
        assert [r.check_id for r in report.checks] == ["l1.matrix_units", "l2.star"]


class TestBuiltins:

    @pytest.mark.parametrize(
        "selector",
        ["s3", "fun:z3", "fun:v4", "dual:s3", "dual:z4", "dual:v4", "suq2", "onplus"],
    )
    def test_every_builtin_passes(self, selector):
        bundle = resolve_instance(selector)
        report = run_suite(
            bundle.data, norm_oracle=bundle.norm_oracle, brute_force=bundle.brute_force, samples=3
        )
        assert report.violations == []

    @pytest.mark.parametrize("q", [0.1, 0.3, 0.5, 0.9, 1.0])
    @pytest.mark.parametrize("level", [2, 4, 6])
    def test_suq2_parameter_grid(self, q, level):
        report = run_suite(suq2_truncated(q, level), samples=3)
        assert report.violations == []
        assert report.get("l1.center").status == STATUS_PASS

    def test_kac_test_uses_the_run_tolerance(self):
        g = suq2_truncated(1.0 - 1e-7, 2)
        checks = ["l1.beta1", "l1.kac_characters"]
        strict = run_suite(g, checks=checks)
        assert {r.status for r in strict.checks} == {STATUS_SKIPPED}
        loose = run_suite(g, tolerance=1e-6, checks=checks)
        assert {r.status for r in loose.checks} == {STATUS_PASS}
