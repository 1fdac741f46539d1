"""Tests for cqg.core.l1_algebra: convolution, involution, λ̂, centrality and β₁."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqg.core.elements import L1Element, L2Vector
from cqg.core.errors import (
    ElementFormatError,
    NoNormOracle,
    NonKacInstance,
    SpaceMismatchError,
    UnknownIrrepError,
    UnknownModeError,
)
from cqg.core.instances import cyclic_group, finite_group_dual, suq2_truncated
from cqg.core.l1_algebra import (
    beta1,
    center_dimension,
    character_l1,
    convolve,
    involute,
    is_central,
    l1_norm,
    lambda_hat,
    matrix_unit,
    quantum_character_l1,
)

TOL = 1e-12

SUQ2_SMALL = suq2_truncated(0.5, 2)


def _seeded(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


# ── convolve ─────────────────────────────────────────────────────────────────

class TestConvolve:

    def test_suq2_structure_constant(self, suq2):
        out = convolve(suq2, L1Element.basis(suq2, "1", 0, 1), L1Element.basis(suq2, "1", 1, 0))
        assert out.residual(L1Element.basis(suq2, "1", 0, 0) * 0.8) < TOL

    def test_s3_standard_block(self, s3):
        out = convolve(s3, L1Element.basis(s3, "v", 0, 0), L1Element.basis(s3, "v", 0, 1))
        assert out.residual(L1Element.basis(s3, "v", 0, 1) * 0.5) < TOL

    def test_mismatched_indices_vanish(self, suq2):
        out = convolve(suq2, L1Element.basis(suq2, "1", 0, 1), L1Element.basis(suq2, "1", 0, 1))
        assert out.is_zero(TOL)

    def test_different_irreps_vanish(self, suq2):
        out = convolve(suq2, L1Element.basis(suq2, "1", 0, 0), L1Element.basis(suq2, "2", 0, 0))
        assert out.blocks == {}

    def test_haar_state_projects_onto_trivial_block(self, suq2, rng):
        f = L1Element.random(suq2, rng)
        triv = character_l1(suq2, "0")
        assert convolve(suq2, triv, f).residual(f.restricted_to(["0"])) < TOL
        assert convolve(suq2, triv, triv).residual(triv) < TOL

    def test_rejects_l2_vectors(self, suq2):
        with pytest.raises(SpaceMismatchError):
            convolve(suq2, L1Element.basis(suq2, "1", 0, 0), L2Vector.basis(suq2, "1", 0, 0))

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1))
    def test_associative(self, seed):
        g, rng = SUQ2_SMALL, _seeded(seed)
        f, h, k = (L1Element.random(g, rng) for _ in range(3))
        left = convolve(g, convolve(g, f, h), k)
        right = convolve(g, f, convolve(g, h, k))
        assert left.residual(right) < 1e-9


# ── involute ─────────────────────────────────────────────────────────────────

class TestInvolute:

    def test_transposes_basis(self, suq2):
        out = involute(suq2, L1Element.basis(suq2, "2", 0, 1))
        assert out.residual(L1Element.basis(suq2, "2", 1, 0)) == 0.0

    def test_conjugate_linear(self, suq2):
        out = involute(suq2, L1Element.basis(suq2, "1", 0, 0) * 1j)
        assert out.coefficient("1", 0, 0) == -1j

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1))
    def test_involutive_and_anti_multiplicative(self, seed):
        g, rng = SUQ2_SMALL, _seeded(seed)
        f, h = L1Element.random(g, rng), L1Element.random(g, rng)
        assert involute(g, involute(g, f)).residual(f) == 0.0
        lhs = involute(g, convolve(g, f, h))
        rhs = convolve(g, involute(g, h), involute(g, f))
        assert lhs.residual(rhs) < 1e-9


# ── characters ───────────────────────────────────────────────────────────────

class TestCharacters:

    def test_trivial(self, suq2):
        expected = L1Element.basis(suq2, "0", 0, 0)
        assert character_l1(suq2, "0").residual(expected) == 0.0
        assert quantum_character_l1(suq2, "0").residual(expected) == 0.0

    def test_suq2_quantum_character(self, suq2):
        expected = L1Element.from_terms(suq2, [("1", 0, 0, 2.0), ("1", 1, 1, 0.5)])
        assert quantum_character_l1(suq2, "1").residual(expected) == 0.0

    def test_kac_characters_coincide(self, s3):
        for a in s3.labels:
            assert quantum_character_l1(s3, a).residual(character_l1(s3, a)) == 0.0

    def test_unknown_label(self, s3):
        with pytest.raises(UnknownIrrepError):
            character_l1(s3, "w")

    def test_index_out_of_range(self, s3):
        with pytest.raises(ElementFormatError):
            L1Element.basis(s3, "v", 0, 2)


# ── λ̂ and matrix units ───────────────────────────────────────────────────────

class TestLambdaHat:

    def test_quantum_character_maps_to_scaled_identity(self, suq2):
        for a, info in suq2.irreps.items():
            image = lambda_hat(suq2, quantum_character_l1(suq2, a))
            assert set(image.blocks) == {a}
            np.testing.assert_allclose(image.blocks[a], np.eye(info.dim) / info.quantum_dimension)

    def test_zero(self, suq2):
        assert lambda_hat(suq2, L1Element.zero()).is_zero(0.0)

    def test_block_relation(self, suq2):
        info = suq2.info("2")
        d = info.quantum_dimension
        for i, j, l in [(0, 1, 2), (2, 0, 1), (1, 1, 0)]:
            left = lambda_hat(suq2, L1Element.basis(suq2, "2", i, j))
            right = lambda_hat(suq2, L1Element.basis(suq2, "2", j, l))
            expected = lambda_hat(suq2, L1Element.basis(suq2, "2", i, l)) * (1.0 / (info.f_eigenvalues[j] * d))
            assert (left @ right).residual(expected) < TOL

    def test_homomorphism_and_star(self, suq2, rng):
        f, h = L1Element.random(suq2, rng), L1Element.random(suq2, rng)
        lf, lh = lambda_hat(suq2, f), lambda_hat(suq2, h)
        assert lambda_hat(suq2, convolve(suq2, f, h)).residual(lf @ lh) < 1e-9
        assert lambda_hat(suq2, involute(suq2, f)).residual(lf.adjoint()) < 1e-12

    def test_matrix_units(self, suq2):
        e01, e10, e00 = (matrix_unit(suq2, "1", i, j) for i, j in [(0, 1), (1, 0), (0, 0)])
        assert (e01 @ e10).residual(e00) < TOL
        assert (e01 @ e01).is_zero(TOL)
        assert e01.adjoint().residual(e10) < TOL


# ── centrality ───────────────────────────────────────────────────────────────

class TestIsCentral:

    @pytest.mark.parametrize("mode", ["commutator", "scalar-blocks"])
    def test_quantum_characters_are_central(self, suq2, mode):
        for a in suq2.labels:
            assert is_central(suq2, quantum_character_l1(suq2, a), mode)

    def test_plain_character_is_not_central_for_non_kac(self, suq2):
        result = is_central(suq2, character_l1(suq2, "1"), "commutator")
        assert not result.central
        assert result.witness.startswith("φ^1_{01}")
        assert result.residual == pytest.approx(abs(1 / (2.0 * 2.5) - 1 / (0.5 * 2.5)))
        assert not is_central(suq2, character_l1(suq2, "1"), "scalar-blocks")

    def test_plain_characters_central_for_kac(self, s3):
        for a in s3.labels:
            assert is_central(s3, character_l1(s3, a), "commutator")

    def test_abelian_dual_is_commutative(self, rng):
        g = finite_group_dual(cyclic_group(4))
        f = L1Element.random(g, rng)
        assert is_central(g, f, "commutator")
        assert is_central(g, f, "scalar-blocks")

    def test_modes_agree_on_random_elements(self, suq2, rng):
        for _ in range(5):
            f = L1Element.random(suq2, rng)
            assert bool(is_central(suq2, f, "commutator")) == bool(is_central(suq2, f, "scalar-blocks"))

    def test_unknown_mode(self, suq2):
        with pytest.raises(UnknownModeError, match="commutator, scalar-blocks"):
            is_central(suq2, L1Element.zero(), "sampling")

    def test_center_dimension(self, suq2, s3, onplus):
        assert center_dimension(suq2) == len(suq2.irreps)
        assert center_dimension(s3) == 3
        assert center_dimension(onplus) == 4

    @pytest.mark.parametrize("q", [0.1, 0.3, 0.5, 0.9, 1.0])
    @pytest.mark.parametrize("level", [2, 4, 6])
    def test_center_dimension_across_q(self, q, level):
        g = suq2_truncated(q, level)
        assert center_dimension(g) == level + 1


# ── β₁ and norms ─────────────────────────────────────────────────────────────

class TestBeta1:

    def test_diagonal_basis_element(self, s3):
        out = beta1(s3, L1Element.basis(s3, "v", 0, 0))
        assert out.residual(character_l1(s3, "v") * 0.5) < TOL

    def test_off_diagonal_basis_element(self, s3):
        assert beta1(s3, L1Element.basis(s3, "v", 0, 1)).is_zero(TOL)

    def test_fixes_the_haar_state(self, s3):
        triv = character_l1(s3, "t")
        assert beta1(s3, triv).residual(triv) == 0.0

    def test_matches_class_averaging(self, s3_bundle, rng):
        g, _, brute = s3_bundle
        for _ in range(10):
            f = L1Element.random(g, rng)
            assert beta1(g, f).residual(brute.beta1(f)) < 1e-9

    def test_module_property(self, onplus, rng):
        z = quantum_character_l1(onplus, "1") * 2.0 + quantum_character_l1(onplus, "2") * 1j
        h = L1Element.random(onplus, rng)
        assert beta1(onplus, convolve(onplus, z, h)).residual(convolve(onplus, z, beta1(onplus, h))) < 1e-9

    def test_rejects_non_kac(self, suq2):
        with pytest.raises(NonKacInstance):
            beta1(suq2, L1Element.basis(suq2, "1", 0, 0))

    def test_kac_tolerance_is_configurable(self):
        g = suq2_truncated(1.0 - 1e-7, 2)
        f = L1Element.basis(g, "1", 0, 0)
        with pytest.raises(NonKacInstance):
            beta1(g, f)
        out = beta1(g, f, tol=1e-6)
        assert out.residual(character_l1(g, "1") * 0.5) < TOL


class TestL1Norm:

    def test_haar_state_has_norm_one(self, s3_bundle):
        g, norms, _ = s3_bundle
        assert l1_norm(g, character_l1(g, "t"), norms) == pytest.approx(1.0)

    def test_zero(self, s3_bundle):
        g, norms, _ = s3_bundle
        assert l1_norm(g, L1Element.zero(), norms) == 0.0

    def test_beta1_is_contractive(self, s3_bundle, rng):
        g, norms, _ = s3_bundle
        for _ in range(100):
            f = L1Element.random(g, rng)
            assert l1_norm(g, beta1(g, f), norms) <= l1_norm(g, f, norms) + 1e-12

    def test_requires_an_oracle(self, suq2):
        with pytest.raises(NoNormOracle):
            l1_norm(suq2, L1Element.basis(suq2, "0", 0, 0), None)
