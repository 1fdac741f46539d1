"""Tests for cqg.core.instances: finite groups, SU_q(2), O_N⁺ and selector resolution."""

from __future__ import annotations

import numpy as np
import pytest

from cqg.core.elements import L1Element, LinfElement
from cqg.core.errors import (
    IncompleteIrrepSetError,
    InvalidGroupError,
    InvalidParameterError,
    NonUnitaryIrrepError,
    UnknownInstanceError,
)
from cqg.core.instances import (
    ExplicitIrrep,
    FiniteGroupPresentation,
    cyclic_group,
    cyclic_irreps,
    finite_group_dual,
    finite_group_function_algebra,
    klein_group,
    klein_irreps,
    on_plus_dims,
    on_plus_truncated,
    q_number,
    resolve_instance,
    s3_irreps,
    suq2_truncated,
    symmetric_group_s3,
)
from cqg.core.l1_algebra import character_l1, convolve


# ── finite groups ────────────────────────────────────────────────────────────

class TestFiniteGroups:

    @pytest.mark.parametrize("p", [cyclic_group(1), cyclic_group(5), klein_group(), symmetric_group_s3()])
    def test_builtin_groups_satisfy_axioms(self, p):
        p.validate()

    def test_s3_products_compose_permutations(self):
        p = symmetric_group_s3()
        assert p.multiply("120", "120") == "201"
        assert p.inverse("120") == "201"
        assert p.multiply("021", "021") == "012"

    def test_non_associative_table_rejected(self):
        table = np.array([[0, 1, 2], [1, 0, 0], [2, 2, 0]])
        p = FiniteGroupPresentation("bad", ("e", "x", "y"), table, "e")
        with pytest.raises(InvalidGroupError):
            p.validate()

    def test_missing_identity_rejected(self):
        p = FiniteGroupPresentation("bad", ("a", "b"), np.array([[0, 1], [1, 0]]), "z")
        with pytest.raises(InvalidGroupError):
            p.validate()

    def test_cyclic_order_must_be_positive(self):
        with pytest.raises(InvalidParameterError):
            cyclic_group(0)


class TestFiniteGroupDual:

    def test_z2(self):
        g = finite_group_dual(cyclic_group(2))
        assert g.labels == ["0", "1"]
        assert g.fusion.get("1", "1").decomp == {"0": 1}

    def test_z3_conjugates_are_inverses(self):
        g = finite_group_dual(cyclic_group(3))
        assert g.info("1").conjugate == "2"
        assert g.info("0").conjugate == "0"

    def test_s3_dual_is_noncommutative(self, dual_s3):
        assert len(dual_s3.irreps) == 6
        assert all(info.dim == 1 for info in dual_s3.irreps.values())
        assert dual_s3.trivial == "012"
        assert any(
            dual_s3.fusion.get(a, b).decomp != dual_s3.fusion.get(b, a).decomp
            for a in dual_s3.labels
            for b in dual_s3.labels
        )


class TestFunctionAlgebra:

    def test_s3_standard_fusion(self, s3):
        assert s3.fusion.get("v", "v").decomp == {"t": 1, "s": 1, "v": 1}
        assert s3.trivial == "t"
        assert s3.is_kac
        assert s3.basis_size == 6

    def test_z2_matches_its_dual(self):
        p = cyclic_group(2)
        g, _, _ = finite_group_function_algebra(p, cyclic_irreps(p))
        dual = finite_group_dual(p)
        assert g.labels == dual.labels
        for a in g.labels:
            for b in g.labels:
                assert g.fusion.get(a, b).decomp == dual.fusion.get(a, b).decomp

    def test_z3_conjugation(self):
        p = cyclic_group(3)
        g, _, _ = finite_group_function_algebra(p, cyclic_irreps(p))
        assert g.info("1").conjugate == "2"

    def test_klein_group(self):
        p = klein_group()
        g, _, _ = finite_group_function_algebra(p, klein_irreps(p))
        assert g.fusion.get("a", "b").decomp == {"c": 1}

    def test_incomplete_irrep_set(self):
        p = symmetric_group_s3()
        with pytest.raises(IncompleteIrrepSetError):
            finite_group_function_algebra(p, s3_irreps(p)[:2])

    def test_repeated_irrep_rejected(self):
        p = cyclic_group(2)
        trivial = cyclic_irreps(p)[0]
        with pytest.raises(IncompleteIrrepSetError):
            finite_group_function_algebra(p, [trivial, ExplicitIrrep("t2", trivial.matrices)])

    def test_non_unitary_irrep(self):
        p = cyclic_group(2)
        bad = ExplicitIrrep("x", {"0": np.eye(1), "1": np.array([[2.0]])})
        with pytest.raises(NonUnitaryIrrepError):
            finite_group_function_algebra(p, [cyclic_irreps(p)[0], bad])


class TestOracles:

    def test_brute_force_convolution(self, s3_bundle):
        g, _, brute = s3_bundle
        f = L1Element.basis(g, "v", 0, 0)
        h = L1Element.basis(g, "v", 0, 1)
        expected = L1Element.basis(g, "v", 0, 1) * 0.5
        assert brute.convolve(f, h).residual(expected) < 1e-12
        assert convolve(g, f, h).residual(expected) < 1e-12

    def test_function_round_trip(self, s3_bundle, rng):
        g, _, brute = s3_bundle
        f = L1Element.random(g, rng)
        assert brute.from_function(brute.to_function(f)).residual(f) < 1e-12

    def test_class_average_of_transposition_indicator(self, s3_bundle):
        _, _, brute = s3_bundle
        x = np.zeros(6, dtype=complex)
        x[brute.group.index("021")] = 3.0
        averaged = brute.class_average(x)
        for token in ("021", "102", "210"):
            assert averaged[brute.group.index(token)] == pytest.approx(1.0)
        assert averaged[brute.group.index("012")] == pytest.approx(0.0)

    def test_l1_norms(self, s3_bundle):
        g, norms, _ = s3_bundle
        assert norms.l1_norm(character_l1(g, "t")) == pytest.approx(1.0)
        assert norms.l1_norm(L1Element.zero()) == 0.0

    def test_linf_norm_of_sign_character(self, s3_bundle):
        g, norms, _ = s3_bundle
        assert norms.linf_norm(LinfElement.basis(g, "s", 0, 0)) == pytest.approx(1.0)


# ── SU_q(2) and O_N⁺ ─────────────────────────────────────────────────────────

class TestSUq2:

    def test_classical_limit(self):
        g = suq2_truncated(1.0, 2)
        assert g.is_kac
        assert [g.info(a).quantum_dimension for a in g.labels] == [1.0, 2.0, 3.0]

    def test_spin_half_eigenvalues(self, suq2):
        assert suq2.info("1").f_eigenvalues == (2.0, 0.5)
        assert suq2.info("1").quantum_dimension == pytest.approx(2.5)

    def test_spin_one_quantum_dimension(self, suq2):
        assert suq2.info("2").quantum_dimension == pytest.approx(5.25)

    def test_quantum_dimensions_are_q_numbers(self, suq2):
        for k in range(5):
            assert suq2.info(str(k)).quantum_dimension == pytest.approx(q_number(k + 1, 0.5))

    def test_fusion_window(self, suq2):
        assert suq2.fusion.get("2", "2").complete
        assert not suq2.fusion.get("2", "3").complete
        assert suq2.fusion.get("2", "3").decomp == {"1": 1, "3": 1}

    def test_self_conjugate_with_reversal(self, suq2):
        info = suq2.info("3")
        assert info.conjugate == "3"
        assert info.conj_index_map == (3, 2, 1, 0)

    def test_name(self, suq2):
        assert suq2.name == "suq2(q=0.5,L=4)"

    @pytest.mark.parametrize("q", [0.0, -0.5, 1.5, float("nan")])
    def test_invalid_q(self, q):
        with pytest.raises(InvalidParameterError):
            suq2_truncated(q, 2)

    def test_invalid_level(self):
        with pytest.raises(InvalidParameterError):
            suq2_truncated(0.5, -1)


class TestOnPlus:

    def test_n2_gives_su2_dimensions(self):
        assert on_plus_dims(2, 4) == [1, 2, 3, 4, 5]

    def test_n3_dimensions(self, onplus):
        assert on_plus_dims(3, 3) == [1, 3, 8, 21]
        assert [onplus.info(a).dim for a in onplus.labels] == [1, 3, 8, 21]
        assert onplus.is_kac

    def test_invalid_n(self):
        with pytest.raises(InvalidParameterError):
            on_plus_truncated(1, 2)


# ── resolve_instance ─────────────────────────────────────────────────────────

class TestResolveInstance:

    def test_s3_has_both_oracles(self):
        bundle = resolve_instance("s3")
        assert bundle.data.name == "fun:S3"
        assert bundle.norm_oracle is not None
        assert bundle.brute_force is not None

    def test_dual_has_norm_oracle_only(self):
        bundle = resolve_instance("dual:z4")
        assert bundle.data.name == "dual:Z4"
        assert bundle.norm_oracle is not None
        assert bundle.brute_force is None

    def test_function_algebra_of_klein_group(self):
        assert len(resolve_instance("fun:v4").data.irreps) == 4

    def test_suq2_parameters(self):
        g = resolve_instance("suq2", q=0.25, level=2).data
        assert g.labels == ["0", "1", "2"]
        assert g.info("1").f_eigenvalues == (4.0, 0.25)

    def test_onplus_default_level(self):
        assert len(resolve_instance("onplus", n=4).data.irreps) == 4

    def test_unknown_selector(self):
        with pytest.raises(UnknownInstanceError):
            resolve_instance("sl3")

    def test_unknown_group_token(self):
        with pytest.raises(UnknownInstanceError):
            resolve_instance("dual:a5")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            resolve_instance(str(tmp_path / "missing.json"))
