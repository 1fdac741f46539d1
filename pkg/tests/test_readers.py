"""Tests for cqg.io: instance and element files, report writers."""

from __future__ import annotations

import dataclasses
import json

import pandas as pd
import pytest

from cqg.core.elements import L1Element, L2Vector
from cqg.core.errors import (
    ElementFormatError,
    InstanceParseError,
    InstanceValidationError,
    UnknownIrrepError,
)
from cqg.core.fusion_data import CharacterRingElement, FusionEntry, FusionTable
from cqg.core.verify import run_suite
from cqg.io.readers import (
    element_space,
    instance_to_dict,
    load_element,
    load_instance,
    parse_element,
    parse_instance,
    save_element,
    save_instance,
)
from cqg.io.reporters import (
    read_json_report,
    write_csv_report,
    write_json_report,
    write_text_report,
)


def _write(path, payload) -> str:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


# ── instance files ───────────────────────────────────────────────────────────

class TestInstanceFiles:

    @pytest.mark.parametrize("name", ["s3", "suq2", "dual_s3"])
    def test_round_trip(self, name, request, tmp_path):
        g = request.getfixturevalue(name)
        path = save_instance(g, tmp_path / "instance.json")
        assert load_instance(path) == g

    def test_empty_irrep_list_is_rejected(self, tmp_path):
        path = _write(tmp_path / "empty.json", {"name": "empty", "irreps": [], "fusion": []})
        with pytest.raises(InstanceValidationError) as exc:
            load_instance(path)
        assert "validate.nonempty" in {r.check_id for r in exc.value.report.violations}

    def test_trace_imbalance_names_the_irrep(self, suq2, tmp_path):
        payload = instance_to_dict(suq2)
        payload["irreps"][1]["f_eigenvalues"] = [2.0, 1.0]
        path = _write(tmp_path / "bad.json", payload)
        with pytest.raises(InstanceValidationError) as exc:
            load_instance(path)
        record = exc.value.report.get("validate.trace_balance")
        assert record.witness.startswith("1:")

    def test_validation_can_be_skipped(self, suq2, tmp_path):
        payload = instance_to_dict(suq2)
        payload["irreps"][1]["f_eigenvalues"] = [2.0, 1.0]
        g = load_instance(_write(tmp_path / "bad.json", payload), validate=False)
        assert g.info("1").f_eigenvalues == (2.0, 1.0)

    def test_trivial_defaults_to_first_irrep(self):
        g = parse_instance({
            "name": "one",
            "irreps": [{"label": "e", "dim": 1, "f_eigenvalues": [1], "conjugate": "e", "conj_index_map": [0]}],
        })
        assert g.trivial == "e"
        assert len(g.fusion) == 0

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InstanceParseError):
            load_instance(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_instance(tmp_path / "missing.json")

    @pytest.mark.parametrize(
        "payload",
        [
            [],
            {"irreps": []},
            {"name": "x", "irreps": {}},
            {"name": "x", "irreps": [{"label": "e", "dim": "1", "f_eigenvalues": [1], "conjugate": "e", "conj_index_map": [0]}]},
            {"name": "x", "irreps": [{"label": "e", "dim": 1, "f_eigenvalues": [1], "conjugate": "e"}]},
            {"name": "x", "irreps": [], "fusion": [{"a": "e", "b": "e"}]},
            {"name": "x", "irreps": [], "tolerance": "small"},
        ],
    )
    def test_schema_errors(self, payload):
        with pytest.raises(InstanceParseError):
            parse_instance(payload)

    def test_schema_error_names_the_field(self):
        payload = {
            "name": "x",
            "irreps": [{"label": "e", "dim": 1.5, "f_eigenvalues": [1], "conjugate": "e", "conj_index_map": [0]}],
        }
        with pytest.raises(InstanceParseError, match="irreps/0/dim"):
            parse_instance(payload)

    def test_duplicate_label(self):
        irrep = {"label": "e", "dim": 1, "f_eigenvalues": [1], "conjugate": "e", "conj_index_map": [0]}
        with pytest.raises(InstanceParseError, match="duplicate label"):
            parse_instance({"name": "x", "irreps": [irrep, irrep]})


# ── element files ────────────────────────────────────────────────────────────

class TestElementFiles:

    def test_round_trip(self, suq2, rng, tmp_path):
        xi = L2Vector.random(suq2, rng)
        path = save_element(xi, tmp_path / "xi.json", instance=suq2.name)
        assert element_space(path) == "L2"
        loaded = load_element(path, suq2)
        assert isinstance(loaded, L2Vector)
        assert loaded.residual(xi) == 0.0

    def test_character_ring_element(self, s3, tmp_path):
        x = CharacterRingElement({"t": 1.0, "v": 0.5 - 2j})
        loaded = load_element(save_element(x, tmp_path / "chi.json"), s3)
        assert isinstance(loaded, CharacterRingElement)
        assert loaded.residual(x) == 0.0

    def test_repeated_terms_add_up(self, s3):
        payload = {
            "space": "L1",
            "terms": [
                {"irrep": "v", "row": 0, "col": 1, "re": 1.0},
                {"irrep": "v", "row": 0, "col": 1, "im": 2.0},
            ],
        }
        f = parse_element(payload, s3)
        assert isinstance(f, L1Element)
        assert f.coefficient("v", 0, 1) == 1 + 2j

    def test_index_out_of_range(self, s3):
        payload = {"space": "L1", "terms": [{"irrep": "v", "row": 2, "col": 0, "re": 1.0}]}
        with pytest.raises(ElementFormatError):
            parse_element(payload, s3)

    def test_unknown_irrep(self, s3):
        payload = {"space": "L1", "terms": [{"irrep": "w", "row": 0, "col": 0, "re": 1.0}]}
        with pytest.raises(UnknownIrrepError):
            parse_element(payload, s3)

    def test_unknown_space(self, s3):
        with pytest.raises(ElementFormatError):
            parse_element({"space": "L3", "terms": []}, s3)

    def test_instance_mismatch(self, s3, suq2):
        payload = {"space": "L1", "instance": suq2.name, "terms": []}
        with pytest.raises(ElementFormatError):
            parse_element(payload, s3)

    def test_non_numeric_coefficient(self, s3):
        payload = {"space": "L1", "terms": [{"irrep": "t", "row": 0, "col": 0, "re": "1"}]}
        with pytest.raises(ElementFormatError):
            parse_element(payload, s3)

    @pytest.mark.parametrize(
        "payload",
        [
            {"space": "L1", "terms": [{"irrep": "t", "row": -1, "col": 0}]},
            {"space": "L2", "terms": [{"irrep": "t", "row": 0}]},
            {"space": "Linf", "terms": [{"irrep": "t", "row": True, "col": 0}]},
            {"space": "CHAR", "terms": [{"re": 1.0}]},
            {"space": "L1"},
            {"terms": []},
        ],
    )
    def test_schema_errors(self, s3, payload):
        with pytest.raises(ElementFormatError):
            parse_element(payload, s3)

    def test_space_of_untagged_file(self, tmp_path):
        with pytest.raises(ElementFormatError):
            element_space(_write(tmp_path / "x.json", {"terms": []}))


# ── reports ──────────────────────────────────────────────────────────────────

@pytest.fixture(scope="module")
def report(s3_bundle):
    g, norms, brute = s3_bundle
    return run_suite(g, 7, norm_oracle=norms, brute_force=brute, samples=5)


class TestReports:

    def test_json(self, report, tmp_path):
        data = read_json_report(write_json_report(report, tmp_path / "r.json"))
        assert data["instance"] == "fun:S3"
        assert data["seed"] == 7
        assert [c["check_id"] for c in data["checks"]] == [r.check_id for r in report.checks]

    def test_text(self, report, tmp_path):
        text = write_text_report(report, tmp_path / "r.txt").read_text(encoding="utf-8")
        assert "fun:S3" in text
        assert "l1.matrix_units" in text

    def test_csv_lists_flagged_cases_only(self, report, tmp_path):
        frame = pd.read_csv(write_csv_report(report, tmp_path / "r.csv"), encoding="utf-8-sig")
        assert list(frame.columns) == ["check_id", "check_name", "status", "issue", "details"]
        assert len(frame) == 0

    def test_csv_failed_fusion(self, s3, tmp_path):
        entries = dict(s3.fusion.entries)
        entries[("s", "v")] = FusionEntry("s", "v", {"t": 1, "s": 1})
        report = run_suite(dataclasses.replace(s3, fusion=FusionTable(entries)), checks=["fusion.consistency"])
        frame = pd.read_csv(write_csv_report(report, tmp_path / "r.csv"), encoding="utf-8-sig")
        assert len(frame) > 0
        assert set(frame["check_id"]) == {"fusion.consistency"}
