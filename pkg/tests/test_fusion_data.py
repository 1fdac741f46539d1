"""Tests for cqg.core.fusion_data: instance data, the character ring and validation."""

from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqg.core.errors import TruncationOverflow, UnknownIrrepError
from cqg.core.fusion_data import (
    CharacterRingElement,
    FusionEntry,
    FusionTable,
    IrrepInfo,
    QuantumGroupData,
    character,
    conjugate_character,
    fuse_characters,
    fusion_frame,
    irrep_frame,
    quantum_dimension,
    validate,
)
from cqg.core.instances import cyclic_group, finite_group_dual


def _violations(g: QuantumGroupData) -> set[str]:
    return {r.check_id for r in validate(g).violations}


def _with_irrep(g: QuantumGroupData, info: IrrepInfo) -> QuantumGroupData:
    return dataclasses.replace(g, irreps={**g.irreps, info.label: info})


# ── validate ─────────────────────────────────────────────────────────────────

class TestValidate:

    def test_s3_function_algebra_is_valid(self, s3):
        assert validate(s3).violations == []

    def test_trivial_only_instance_is_valid(self):
        g = QuantumGroupData("trivial", {"t": IrrepInfo("t", 1, (1.0,), "t", (0,))})
        assert validate(g).ok

    @pytest.mark.parametrize("name", ["suq2", "onplus", "dual_s3"])
    def test_builtin_instances_are_valid(self, name, request):
        g = request.getfixturevalue(name)
        assert validate(g).violations == []

    def test_negated_eigenvalue_is_reported(self, suq2):
        g = _with_irrep(suq2, IrrepInfo("1", 2, (-2.0, 0.5), "1", (1, 0)))
        report = validate(g)
        assert "validate.eigenvalue_positivity" in {r.check_id for r in report.violations}
        record = report.get("validate.eigenvalue_positivity")
        assert record.check_name == "f_eigenvalues positivity"
        assert record.witness.startswith("1:")

    def test_trace_imbalance_names_the_irrep(self, suq2):
        g = _with_irrep(suq2, IrrepInfo("1", 2, (2.0, 1.0), "1", (1, 0)))
        record = validate(g).get("validate.trace_balance")
        assert not record.passed
        assert record.witness.startswith("1:")

    def test_eigenvalue_count_mismatch(self, suq2):
        g = _with_irrep(suq2, IrrepInfo("2", 3, (4.0, 1.0), "2", (2, 1, 0)))
        assert "validate.eigenvalue_count" in _violations(g)

    def test_empty_instance_is_invalid(self):
        assert "validate.nonempty" in _violations(QuantumGroupData("empty", {}))

    def test_unknown_conjugate_label(self, s3):
        g = _with_irrep(s3, IrrepInfo("v", 2, (1.0, 1.0), "w", (0, 1)))
        assert "validate.conjugate_label" in _violations(g)

    def test_broken_index_map(self, s3):
        g = _with_irrep(s3, IrrepInfo("v", 2, (1.0, 1.0), "v", (0, 0)))
        assert "validate.conj_index_map" in _violations(g)

    def test_conjugate_eigenvalues_must_invert(self, suq2):
        # σ = identity pairs λ₀ = 2 with itself
        g = _with_irrep(suq2, IrrepInfo("1", 2, (2.0, 0.5), "1", (0, 1)))
        assert "validate.conjugate_eigenvalues" in _violations(g)

    def test_corrupted_fusion_fails_associativity_only(self, s3):
        entries = dict(s3.fusion.entries)
        entries[("s", "v")] = FusionEntry("s", "v", {"t": 1, "s": 1})
        g = dataclasses.replace(s3, fusion=FusionTable(entries))
        assert _violations(g) == {"validate.associativity"}
        witness = validate(g).get("validate.associativity").witness
        assert "⊗" in witness

    def test_dimension_inconsistency(self, s3):
        entries = dict(s3.fusion.entries)
        entries[("v", "v")] = FusionEntry("v", "v", {"t": 1, "v": 1})
        g = dataclasses.replace(s3, fusion=FusionTable(entries))
        assert "validate.dimension_consistency" in _violations(g)

    def test_validate_never_raises_on_garbage(self):
        g = QuantumGroupData(
            "garbage",
            {"t": IrrepInfo("t", 1, (1.0,), "t", (0,)), "x": IrrepInfo("x", 0, (), "y", (5,))},
            FusionTable.from_entries([FusionEntry("x", "z", {"q": -1})]),
            tolerance=-1.0,
        )
        report = validate(g)
        assert not report.ok
        assert len(report.checks) == 18


# ── quantum_dimension ────────────────────────────────────────────────────────

class TestQuantumDimension:

    def test_trivial(self, suq2):
        assert quantum_dimension(suq2, "0") == 1.0

    def test_suq2_spin_half(self, suq2):
        assert quantum_dimension(suq2, "1") == pytest.approx(2.5)
        q = 0.5
        assert quantum_dimension(suq2, "1") == pytest.approx((q ** 2 - q ** -2) / (q - 1 / q))

    def test_s3_standard_irrep(self, s3):
        assert quantum_dimension(s3, "v") == pytest.approx(2.0)

    def test_unknown_label(self, s3):
        with pytest.raises(UnknownIrrepError):
            quantum_dimension(s3, "nope")


# ── fuse_characters ──────────────────────────────────────────────────────────

class TestFuseCharacters:

    def test_s3_standard_squared(self, s3):
        out = fuse_characters(s3, character(s3, "v"), character(s3, "v"))
        assert out.coeffs == {"t": 1, "s": 1, "v": 1}
        assert not out.lossy

    def test_suq2_spin_half_squared(self, suq2):
        out = fuse_characters(suq2, character(suq2, "1"), character(suq2, "1"))
        assert out.coeffs == {"0": 1, "2": 1}

    def test_trivial_is_unit(self, s3):
        x = CharacterRingElement({"s": 2.0, "v": -1.0 + 1j})
        out = fuse_characters(s3, character(s3, "t"), x)
        assert out.residual(x) == 0.0

    def test_out_of_window_raises(self, suq2):
        with pytest.raises(TruncationOverflow) as exc:
            fuse_characters(suq2, character(suq2, "3"), character(suq2, "3"))
        assert (exc.value.a, exc.value.b) == ("3", "3")

    def test_lossy_mode_keeps_in_window_part(self, suq2):
        out = fuse_characters(suq2, character(suq2, "3"), character(suq2, "3"), lossy=True)
        assert out.lossy
        assert out.support() == ["0", "2", "4"]

    def test_missing_entry_uses_unit_rule(self):
        g = QuantumGroupData(
            "two",
            {"t": IrrepInfo("t", 1, (1.0,), "t", (0,)), "x": IrrepInfo("x", 1, (1.0,), "x", (0,))},
        )
        assert fuse_characters(g, character(g, "x"), character(g, "t")).coeffs == {"x": 1}
        with pytest.raises(TruncationOverflow):
            fuse_characters(g, character(g, "x"), character(g, "x"))

    def test_dual_fusion_is_noncommutative(self, dual_s3):
        a, b = character(dual_s3, "021"), character(dual_s3, "102")
        assert fuse_characters(dual_s3, a, b).coeffs != fuse_characters(dual_s3, b, a).coeffs

    @settings(max_examples=30, deadline=None)
    @given(
        x=st.dictionaries(st.sampled_from(["t", "s", "v"]), st.integers(-3, 3), max_size=3),
        y=st.dictionaries(st.sampled_from(["t", "s", "v"]), st.integers(-3, 3), max_size=3),
        z=st.dictionaries(st.sampled_from(["t", "s", "v"]), st.integers(-3, 3), max_size=3),
    )
    def test_s3_character_ring_is_associative_and_commutative(self, s3, x, y, z):
        x, y, z = (CharacterRingElement({k: complex(v) for k, v in d.items()}) for d in (x, y, z))
        xy = fuse_characters(s3, x, y)
        assert xy.residual(fuse_characters(s3, y, x)) == 0.0
        left = fuse_characters(s3, xy, z)
        right = fuse_characters(s3, x, fuse_characters(s3, y, z))
        assert left.residual(right) == 0.0


class TestConjugateCharacter:

    def test_cyclic_dual_conjugates_inverse(self):
        g = finite_group_dual(cyclic_group(3))
        out = conjugate_character(g, character(g, "1"))
        assert out.coeffs == {"2": 1}

    def test_conjugate_linear(self, suq2):
        out = conjugate_character(suq2, CharacterRingElement({"1": 2j}))
        assert out.coefficient("1") == -2j


# ── display tables ───────────────────────────────────────────────────────────

def test_irrep_frame(onplus):
    frame = irrep_frame(onplus)
    assert list(frame["dim"]) == [1, 3, 8, 21]
    assert list(frame["quantum_dimension"]) == [1.0, 3.0, 8.0, 21.0]


def test_fusion_frame(s3):
    frame = fusion_frame(s3)
    row = frame[(frame["a"] == "v") & (frame["b"] == "v")].iloc[0]
    assert row["decomposition"] == "t + s + v"
    assert bool(row["complete"])
