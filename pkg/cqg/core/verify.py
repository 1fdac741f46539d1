"""
Invariant suite for a truncated compact quantum group.

Every public ``check_*`` function follows the same contract:

    Parameters
    ----------
    ctx : SuiteContext          (instance, tolerance, sample count, oracles)
    rng : np.random.Generator   (private to the check, seeded from (seed, index))

    Returns
    -------
    CheckRecord

Checks never raise for a violated identity; they return a failed record whose
witness names the first offending case.  Checks that need a Kac instance, a
norm oracle or a brute-force oracle return a skipped record with the reason.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
import pandas as pd

from cqg.config.constants import (
    CENTER_SAMPLE_COUNT,
    CHECK_BETA1,
    CHECK_BETA1_CONTRACTIVITY,
    CHECK_BETA2,
    CHECK_BETA2_ROUTES,
    CHECK_CENTER,
    CHECK_EXPANSION,
    CHECK_FUSION_CONJUGATION,
    CHECK_FUSION_CONSISTENCY,
    CHECK_IDEMPOTENT,
    CHECK_INVOLUTION,
    CHECK_KAC_CHARACTERS,
    CHECK_L1_ASSOCIATIVITY,
    CHECK_LAMBDA_HAT,
    CHECK_MATRIX_UNITS,
    CHECK_ORACLE_BETA1,
    CHECK_ORACLE_CONVOLUTION,
    CHECK_ORTHOGONALITY,
    CHECK_PLAIN_CHARACTERS,
    CHECK_PQ,
    CHECK_QC_ACTION,
    CHECK_RESTRICTION,
    CHECK_SEPARATION,
    CHECK_STAR,
    CHECK_TRANSPORT,
    DEFAULT_SEED,
    EXPECTED_FAILURE_MARGIN,
    MATRIX_UNIT_EXHAUSTIVE_MAX_DIM,
    MATRIX_UNIT_SAMPLE_COUNT,
    MODE_COMMUTATOR,
    MODE_SCALAR_BLOCKS,
    ORTHOGONALITY_EXHAUSTIVE_MAX_DIM,
    RANDOM_SAMPLE_COUNT,
    SKIP_NO_BRUTE_FORCE,
    SKIP_NO_NORM_ORACLE,
    SKIP_NON_KAC,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
)
from cqg.core.elements import L1Element, L2Vector, LinfElement, basis_order
from cqg.core.errors import InstanceValidationError, InvalidParameterError
from cqg.core.fusion_data import (
    CharacterRingElement,
    QuantumGroupData,
    character,
    conjugate_character,
    validate_fusion,
    validate_structure,
)
from cqg.core.instances import BruteForceOracle, NormOracle
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
from cqg.core.l2_space import (
    a_map,
    b_map,
    beta2_haar,
    beta2_haar_via_coproduct,
    beta2_rank,
    character_to_coefficients,
    convolve_l2,
    expand_quantum_characters,
    inner,
    norm,
    pq_projection,
    restrict_r,
    star,
)
from cqg.io.reporters import CheckRecord, VerificationReport

logger = logging.getLogger(__name__)


# ╔═══════════════════════════════════════════════════════════════════════════╗
# ║  CONTEXT AND BOOKKEEPING                                                 ║
# ╚═══════════════════════════════════════════════════════════════════════════╝


@dataclass(frozen=True)
class SuiteContext:
    """Everything a check may look at."""

    g: QuantumGroupData
    tol: float
    samples: int = RANDOM_SAMPLE_COUNT
    norm_oracle: Optional[NormOracle] = None
    brute_force: Optional[BruteForceOracle] = None

    @property
    def is_kac(self) -> bool:
        """Kac test at the run tolerance rather than the instance tolerance."""
        return self.g.kac_within(self.tol)

    def random_l1(self, rng: np.random.Generator) -> L1Element:
        return L1Element.random(self.g, rng)

    def random_l2(self, rng: np.random.Generator) -> L2Vector:
        return L2Vector.random(self.g, rng)

    def random_central(self, rng: np.random.Generator) -> L1Element:
        """Random combination of the quantum characters φ_q^α."""
        total = L1Element.zero()
        for a in self.g.labels:
            c = complex(rng.random(), rng.random())
            total = total + quantum_character_l1(self.g, a) * c
        return total


class _Tally:
    """Accumulates residuals of one check; a case fails when its residual exceeds tol."""

    def __init__(self, tol: float) -> None:
        self.tol = tol
        self.cases = 0
        self.worst = 0.0
        self.rows: list[dict] = []

    def add(self, case: str, residual: float) -> None:
        residual = float(residual)
        self.cases += 1
        if math.isnan(residual):
            residual = math.inf
        self.worst = max(self.worst, residual)
        if residual > self.tol:
            self.rows.append({"case": case, "residual": residual})

    def require(self, case: str, ok: bool, note: str = "") -> None:
        """A boolean case; a failure is recorded with an infinite residual."""
        self.cases += 1
        if not ok:
            self.rows.append({"case": f"{case}: {note}" if note else case, "residual": math.inf})

    def record(self, check_id: str, check_name: str, **extra) -> CheckRecord:
        if not self.rows:
            return CheckRecord(
                check_id=check_id,
                check_name=check_name,
                status=STATUS_PASS,
                summary=f"✓ {check_name}: {self.cases:,} case(s), worst residual {self.worst:.2e}",
                worst_residual=self.worst,
                **extra,
            )
        return CheckRecord(
            check_id=check_id,
            check_name=check_name,
            status=STATUS_FAIL,
            summary=f"✗ {check_name}: {len(self.rows):,} of {self.cases:,} case(s) violated",
            worst_residual=self.worst,
            witness=self.rows[0]["case"],
            issue_count=len(self.rows),
            details=pd.DataFrame(self.rows),
            **extra,
        )


def _skipped(check_id: str, check_name: str, reason: str, detail: str) -> CheckRecord:
    return CheckRecord(
        check_id=check_id,
        check_name=check_name,
        status=STATUS_SKIPPED,
        summary=f"– {check_name}: skipped ({detail})",
        reason=reason,
    )


def _non_constant(g: QuantumGroupData, label: str, tol: float) -> bool:
    lam = g.info(label).eigenvalues
    return bool(np.ptp(lam) > tol) if lam.size else False


# ╔═══════════════════════════════════════════════════════════════════════════╗
# ║  FUSION                                                                   ║
# ╚═══════════════════════════════════════════════════════════════════════════╝


def check_fusion_consistency(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Fusion consistency** — unit, n- and d-multiplicativity and associativity
    on every complete entry and triple."""
    name = "fusion consistency"
    records = validate_fusion(ctx.g)
    worst = max((r.worst_residual for r in records), default=0.0)
    failed = [r for r in records if not r.passed]
    if not failed:
        return CheckRecord(
            check_id=CHECK_FUSION_CONSISTENCY,
            check_name=name,
            status=STATUS_PASS,
            summary=f"✓ {name}: {len(ctx.g.fusion):,} entries, worst residual {worst:.2e}",
            worst_residual=worst,
        )
    # The associativity witness names a triple; report it first when present.
    failed.sort(key=lambda r: r.check_id != "validate.associativity")
    frames = [r.details.assign(invariant=r.check_name) for r in failed if r.details is not None]
    details = pd.concat(frames, ignore_index=True) if frames else None
    return CheckRecord(
        check_id=CHECK_FUSION_CONSISTENCY,
        check_name=name,
        status=STATUS_FAIL,
        summary=f"✗ {name}: {', '.join(r.check_name for r in failed)} violated",
        worst_residual=worst,
        witness=f"{failed[0].check_name}: {failed[0].witness}",
        issue_count=sum(r.issue_count for r in failed),
        details=details,
    )


def check_fusion_conjugation(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Conjugation on the fusion ring** — χ ↦ χ̄ is an involution, α⊗ᾱ contains
    the trivial irrep once, and N^γ_{αβ} = N^γ̄_{β̄ᾱ} on complete entries."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a in g.labels:
        chi = character(g, a)
        tally.add(f"χ^{a} conjugated twice", conjugate_character(g, conjugate_character(g, chi)).residual(chi))

    triv = g.trivial
    for a, info in g.irreps.items():
        entry = g.fusion.get(a, info.conjugate)
        if entry is not None and entry.complete:
            tally.add(f"N^{triv}_{{{a},{info.conjugate}}}", abs(entry.decomp.get(triv, 0) - 1))

    for e in g.fusion:
        if not e.complete or e.a not in g or e.b not in g:
            continue
        mirrored = g.fusion.get(g.info(e.b).conjugate, g.info(e.a).conjugate)
        if mirrored is None or not mirrored.complete:
            continue
        for c, m in e.decomp.items():
            if c not in g:
                continue
            tally.add(
                f"N^{c}_{{{e.a},{e.b}}} vs conjugate-reversed entry",
                abs(m - mirrored.decomp.get(g.info(c).conjugate, 0)),
            )
    return tally.record(CHECK_FUSION_CONJUGATION, "fusion conjugation")


# ╔═══════════════════════════════════════════════════════════════════════════╗
# ║  L¹ ALGEBRA                                                               ║
# ╚═══════════════════════════════════════════════════════════════════════════╝


def check_idempotent_quantum_characters(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**φ_q^α ⋆ φ_q^α = φ_q^α / d_α** for every irrep."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, info in g.irreps.items():
        qc = quantum_character_l1(g, a)
        tally.add(f"φ_q^{a}", convolve(g, qc, qc).residual(qc * (1.0 / info.quantum_dimension)))
    return tally.record(CHECK_IDEMPOTENT, "quantum-character idempotents")


def check_quantum_character_action(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**φ_q^α ⋆ φ^β_{kl} = φ^β_{kl} ⋆ φ_q^α = (δ_{αβ}/d_α) φ^β_{kl}** on the full basis."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    basis = [(b, k, l, L1Element.basis(g, b, k, l)) for b, k, l in basis_order(g)]
    for a, info in g.irreps.items():
        qc = quantum_character_l1(g, a)
        for b, k, l, e in basis:
            expected = e * (1.0 / info.quantum_dimension) if a == b else L1Element.zero()
            tally.add(f"φ_q^{a} ⋆ φ^{b}_{{{k}{l}}}", convolve(g, qc, e).residual(expected))
            tally.add(f"φ^{b}_{{{k}{l}}} ⋆ φ_q^{a}", convolve(g, e, qc).residual(expected))
    return tally.record(CHECK_QC_ACTION, "two-sided quantum-character action")


def _matrix_unit_stack(g: QuantumGroupData, label: str) -> np.ndarray:
    """Array E[i, j] = block of e^α_{ij}, shape (n, n, n, n)."""
    n = g.info(label).dim
    stack = np.empty((n, n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            stack[i, j] = matrix_unit(g, label, i, j).blocks[label]
    return stack


def check_matrix_units(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Matrix units** — e_{ij} e_{kl} = δ_{jk} e_{il} and e_{ij}* = e_{ji}.

    Exhaustive over index quadruples for blocks up to
    ``MATRIX_UNIT_EXHAUSTIVE_MAX_DIM``, seeded sample above.
    """
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, info in g.irreps.items():
        n = info.dim
        units = _matrix_unit_stack(g, a)

        adjoint = np.abs(units.conj().transpose(0, 1, 3, 2) - units.transpose(1, 0, 2, 3))
        tally.add(f"(e^{a}_{{ij}})* = e^{a}_{{ji}}", adjoint.max())

        if n <= MATRIX_UNIT_EXHAUSTIVE_MAX_DIM:
            right = units.transpose(2, 0, 1, 3).reshape(n, n ** 3)
            eye = np.eye(n)
            for i in range(n):
                product = (units[i].reshape(n * n, n) @ right).reshape(n, n, n, n, n)
                product = product.transpose(0, 2, 3, 1, 4)
                expected = np.einsum("jk,lac->jklac", eye, units[i])
                deviation = np.abs(product - expected).reshape(n, n, n, -1).max(axis=3)
                j, k, l = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
                tally.add(f"e^{a}_{{{i}{j}}} e^{a}_{{{k}{l}}}", deviation[j, k, l])
        else:
            for i, j, k, l in rng.integers(0, n, size=(MATRIX_UNIT_SAMPLE_COUNT, 4)):
                expected = units[i, l] if j == k else 0.0
                tally.add(
                    f"e^{a}_{{{i}{j}}} e^{a}_{{{k}{l}}}",
                    np.abs(units[i, j] @ units[k, l] - expected).max(),
                )

    labels = g.labels
    for a, b in zip(labels, labels[1:]):
        product = matrix_unit(g, a, 0, 0) @ matrix_unit(g, b, 0, 0)
        tally.add(f"e^{a}_{{00}} e^{b}_{{00}}", product.norm_max())
    return tally.record(CHECK_MATRIX_UNITS, "matrix units")


def check_lambda_hat(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**λ̂ is a *-homomorphism** on seeded random pairs; λ̂(φ_q^α) = I/d_α."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, info in g.irreps.items():
        image = lambda_hat(g, quantum_character_l1(g, a)).blocks[a]
        tally.add(f"λ̂(φ_q^{a})", np.abs(image - np.eye(info.dim) / info.quantum_dimension).max())
    tally.add("λ̂(0)", lambda_hat(g, L1Element.zero()).norm_max())
    for s in range(ctx.samples):
        f, h = ctx.random_l1(rng), ctx.random_l1(rng)
        lf, lh = lambda_hat(g, f), lambda_hat(g, h)
        tally.add(f"sample {s}: λ̂(f⋆h) = λ̂(f)λ̂(h)", lambda_hat(g, convolve(g, f, h)).residual(lf @ lh))
        tally.add(f"sample {s}: λ̂(f^o) = λ̂(f)*", lambda_hat(g, involute(g, f)).residual(lf.adjoint()))
    return tally.record(CHECK_LAMBDA_HAT, "λ̂ *-homomorphism")


def check_l1_associativity(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**(f⋆g)⋆h = f⋆(g⋆h)** on seeded random triples."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for s in range(ctx.samples):
        f, h, k = ctx.random_l1(rng), ctx.random_l1(rng), ctx.random_l1(rng)
        left = convolve(g, convolve(g, f, h), k)
        right = convolve(g, f, convolve(g, h, k))
        tally.add(f"sample {s}", left.residual(right))
    return tally.record(CHECK_L1_ASSOCIATIVITY, "L¹ associativity")


def check_involution(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Involution** — f^{oo} = f and (f⋆h)^o = h^o⋆f^o on seeded random pairs."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, i, j in basis_order(g):
        image = involute(g, L1Element.basis(g, a, i, j))
        tally.add(f"(φ^{a}_{{{i}{j}}})^o", image.residual(L1Element.basis(g, a, j, i)))
    for s in range(ctx.samples):
        f, h = ctx.random_l1(rng), ctx.random_l1(rng)
        tally.add(f"sample {s}: f^oo = f", involute(g, involute(g, f)).residual(f))
        tally.add(
            f"sample {s}: (f⋆h)^o = h^o⋆f^o",
            involute(g, convolve(g, f, h)).residual(convolve(g, involute(g, h), involute(g, f))),
        )
    return tally.record(CHECK_INVOLUTION, "L¹ involution")


def check_center(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Center** — φ_q^α central, centrality modes agree, dim 𝒵 = #irreps."""
    g = ctx.g
    tally = _Tally(ctx.tol)

    dim = center_dimension(g)
    tally.require("center dimension", dim == len(g.irreps), f"{dim} ≠ {len(g.irreps)} irreps")

    def agree(case: str, f: L1Element) -> tuple[bool, str]:
        by_commutator = is_central(g, f, MODE_COMMUTATOR, tol=ctx.tol)
        by_blocks = is_central(g, f, MODE_SCALAR_BLOCKS, tol=ctx.tol)
        tally.require(
            f"{case}: modes agree",
            by_commutator.central == by_blocks.central,
            f"commutator={by_commutator.central}, scalar-blocks={by_blocks.central}",
        )
        return by_commutator.central, by_commutator.witness

    for a in g.labels:
        central, witness = agree(f"φ_q^{a}", quantum_character_l1(g, a))
        tally.require(f"φ_q^{a} central", central, witness)
        agree(f"φ^{a}", character_l1(g, a))
    for s in range(min(ctx.samples, CENTER_SAMPLE_COUNT)):
        agree(f"random sample {s}", ctx.random_l1(rng))
        central, witness = agree(f"central sample {s}", ctx.random_central(rng))
        tally.require(f"central sample {s} central", central, witness)
    return tally.record(CHECK_CENTER, "center of L¹")


def check_kac_characters(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Kac coincidence** — d_α = n_α and φ_q^α = φ^α."""
    g = ctx.g
    name = "Kac characters"
    if not ctx.is_kac:
        return _skipped(CHECK_KAC_CHARACTERS, name, SKIP_NON_KAC, "instance is not Kac")
    tally = _Tally(ctx.tol)
    for a, info in g.irreps.items():
        tally.add(f"d_{a} = n_{a}", abs(info.quantum_dimension - info.dim))
        tally.add(f"φ_q^{a} = φ^{a}", quantum_character_l1(g, a).residual(character_l1(g, a)))
    return tally.record(CHECK_KAC_CHARACTERS, name)


def check_plain_character_centrality(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Plain characters** — central on Kac instances; on non-Kac instances φ^α
    with non-constant eigenvalues must be detected as non-central (expected failure)."""
    g = ctx.g
    name = "plain-character centrality"
    if ctx.is_kac:
        tally = _Tally(ctx.tol)
        for a in g.labels:
            result = is_central(g, character_l1(g, a), MODE_COMMUTATOR, tol=ctx.tol)
            tally.add(f"φ^{a}", result.residual)
        return tally.record(CHECK_PLAIN_CHARACTERS, name)

    margin = EXPECTED_FAILURE_MARGIN * ctx.tol
    rows = []
    witnesses = []
    worst = 0.0
    for a in g.labels:
        if not _non_constant(g, a, ctx.tol):
            continue
        f = character_l1(g, a)
        by_commutator = is_central(g, f, MODE_COMMUTATOR, tol=margin)
        by_blocks = is_central(g, f, MODE_SCALAR_BLOCKS, tol=margin)
        worst = max(worst, by_commutator.residual)
        if by_commutator.central or by_blocks.central:
            rows.append({"case": f"φ^{a} not detected as non-central", "residual": by_commutator.residual})
        else:
            witnesses.append(f"φ^{a}: {by_commutator.witness}")
    return _expected_failure_record(CHECK_PLAIN_CHARACTERS, name, rows, witnesses, worst)


def _expected_failure_record(
    check_id: str, name: str, rows: list[dict], witnesses: list[str], worst: float
) -> CheckRecord:
    if rows:
        return CheckRecord(
            check_id=check_id,
            check_name=name,
            status=STATUS_FAIL,
            summary=f"✗ {name}: expected violation missing in {len(rows)} case(s)",
            worst_residual=worst,
            witness=rows[0]["case"],
            expected_failure=True,
            issue_count=len(rows),
            details=pd.DataFrame(rows),
        )
    return CheckRecord(
        check_id=check_id,
        check_name=name,
        status=STATUS_PASS,
        summary=f"✓ {name}: expected violation detected for {len(witnesses)} irrep(s)",
        worst_residual=worst,
        witness=witnesses[0] if witnesses else "",
        expected_failure=True,
    )


def check_beta1(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**β₁** — basis action, idempotence, range = center, module property."""
    g = ctx.g
    name = "β₁ central projection"
    if not ctx.is_kac:
        return _skipped(CHECK_BETA1, name, SKIP_NON_KAC, "β₁ needs a Kac instance")
    tally = _Tally(ctx.tol)

    for a, i, j in basis_order(g):
        n = g.info(a).dim
        expected = character_l1(g, a) * (1.0 / n) if i == j else L1Element.zero()
        e = L1Element.basis(g, a, i, j)
        tally.add(f"β₁(φ^{a}_{{{i}{j}}})", beta1(g, e, tol=ctx.tol).residual(expected))
    for a in g.labels:
        phi = character_l1(g, a)
        tally.add(f"β₁(φ^{a}) = φ^{a}", beta1(g, phi, tol=ctx.tol).residual(phi))

    for s in range(ctx.samples):
        f = ctx.random_l1(rng)
        b = beta1(g, f, tol=ctx.tol)
        tally.add(f"sample {s}: β₁∘β₁ = β₁", beta1(g, b, tol=ctx.tol).residual(b))
        if s < CENTER_SAMPLE_COUNT:
            tally.require(f"sample {s}: β₁(f) central", bool(is_central(g, b, MODE_COMMUTATOR, tol=ctx.tol)))
            fixed = b.residual(f) <= ctx.tol
            central = bool(is_central(g, f, MODE_COMMUTATOR, tol=ctx.tol))
            tally.require(f"sample {s}: β₁(f) = f ⇔ f central", fixed == central)
        z = ctx.random_central(rng)
        h = ctx.random_l1(rng)
        lhs = beta1(g, convolve(g, z, h), tol=ctx.tol)
        rhs = convolve(g, z, beta1(g, h, tol=ctx.tol))
        tally.add(f"sample {s}: β₁(z⋆h) = z⋆β₁(h)", lhs.residual(rhs))
    return tally.record(CHECK_BETA1, name)


def check_beta1_contractivity(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**‖β₁(f)‖₁ ≤ ‖f‖₁** and norm-oracle sanity (subadditive, homogeneous)."""
    g = ctx.g
    name = "β₁ L¹-contractivity"
    if not ctx.is_kac:
        return _skipped(CHECK_BETA1_CONTRACTIVITY, name, SKIP_NON_KAC, "β₁ needs a Kac instance")
    if ctx.norm_oracle is None:
        return _skipped(CHECK_BETA1_CONTRACTIVITY, name, SKIP_NO_NORM_ORACLE, "instance has no norm oracle")
    oracle = ctx.norm_oracle
    tally = _Tally(ctx.tol)
    tally.add("‖0‖₁", l1_norm(g, L1Element.zero(), oracle))
    tally.add("‖φ^triv‖₁ = 1", abs(l1_norm(g, character_l1(g, g.trivial), oracle) - 1.0))
    for s in range(ctx.samples):
        f, h = ctx.random_l1(rng), ctx.random_l1(rng)
        nf, nh = l1_norm(g, f, oracle), l1_norm(g, h, oracle)
        tally.add(f"sample {s}: ‖β₁f‖₁ − ‖f‖₁", max(0.0, l1_norm(g, beta1(g, f, tol=ctx.tol), oracle) - nf))
        tally.add(f"sample {s}: ‖f+h‖₁ ≤ ‖f‖₁+‖h‖₁", max(0.0, l1_norm(g, f + h, oracle) - nf - nh))
        c = complex(rng.random(), rng.random())
        tally.add(f"sample {s}: ‖cf‖₁ = |c|‖f‖₁", abs(l1_norm(g, f * c, oracle) - abs(c) * nf))
        x = LinfElement.random(g, rng)
        y = LinfElement.random(g, rng)
        tally.add(
            f"sample {s}: ‖x+y‖∞ ≤ ‖x‖∞+‖y‖∞",
            max(0.0, oracle.linf_norm(x + y) - oracle.linf_norm(x) - oracle.linf_norm(y)),
        )
        tally.add(
            f"sample {s}: ‖cx‖∞ = |c|‖x‖∞",
            abs(oracle.linf_norm(x * c) - abs(c) * oracle.linf_norm(x)),
        )
    return tally.record(CHECK_BETA1_CONTRACTIVITY, name)


def check_oracle_convolution(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Structure constants vs. function-level convolution** on the group."""
    g = ctx.g
    name = "convolution oracle"
    if ctx.brute_force is None:
        return _skipped(CHECK_ORACLE_CONVOLUTION, name, SKIP_NO_BRUTE_FORCE, "instance has no brute-force oracle")
    oracle = ctx.brute_force
    tally = _Tally(ctx.tol)
    basis = [(a, i, j, L1Element.basis(g, a, i, j)) for a, i, j in basis_order(g)]
    for a, i, j, e in basis:
        for b, k, l, h in basis:
            tally.add(
                f"φ^{a}_{{{i}{j}}} ⋆ φ^{b}_{{{k}{l}}}",
                convolve(g, e, h).residual(oracle.convolve(e, h)),
            )
    for s in range(ctx.samples):
        f, h = ctx.random_l1(rng), ctx.random_l1(rng)
        tally.add(f"sample {s}", convolve(g, f, h).residual(oracle.convolve(f, h)))
    return tally.record(CHECK_ORACLE_CONVOLUTION, name)


def check_oracle_beta1(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**β₁ vs. class averaging** on the group."""
    g = ctx.g
    name = "β₁ oracle"
    if ctx.brute_force is None:
        return _skipped(CHECK_ORACLE_BETA1, name, SKIP_NO_BRUTE_FORCE, "instance has no brute-force oracle")
    if not ctx.is_kac:
        return _skipped(CHECK_ORACLE_BETA1, name, SKIP_NON_KAC, "β₁ needs a Kac instance")
    oracle = ctx.brute_force
    tally = _Tally(ctx.tol)
    for a, i, j in basis_order(g):
        e = L1Element.basis(g, a, i, j)
        tally.add(f"β₁(φ^{a}_{{{i}{j}}})", beta1(g, e, tol=ctx.tol).residual(oracle.beta1(e)))
    for s in range(ctx.samples):
        f = ctx.random_l1(rng)
        tally.add(f"sample {s}", beta1(g, f, tol=ctx.tol).residual(oracle.beta1(f)))
    return tally.record(CHECK_ORACLE_BETA1, name)


# ╔═══════════════════════════════════════════════════════════════════════════╗
# ║  L² SPACE                                                                 ║
# ╚═══════════════════════════════════════════════════════════════════════════╝


def check_orthogonality(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Peter–Weyl orthogonality** and orthonormality of χ^α and χ_q^α."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, info in g.irreps.items():
        n = info.dim
        d = info.quantum_dimension
        index = [(i, j) for i in range(n) for j in range(n)]
        vectors = {(i, j): L2Vector.basis(g, a, i, j) for i, j in index}
        if n <= ORTHOGONALITY_EXHAUSTIVE_MAX_DIM:
            pairs = [(p, q) for p in index for q in index]
        else:
            picks = rng.integers(0, len(index), size=(MATRIX_UNIT_SAMPLE_COUNT, 2))
            pairs = [(p, p) for p in index] + [(index[x], index[y]) for x, y in picks]
        for (i, j), (k, l) in pairs:
            expected = 1.0 / (info.f_eigenvalues[i] * d) if (i, j) == (k, l) else 0.0
            tally.add(
                f"⟨Λu^{a}_{{{i}{j}}}, Λu^{a}_{{{k}{l}}}⟩",
                abs(inner(g, vectors[(i, j)], vectors[(k, l)]) - expected),
            )

    labels = g.labels
    for a in labels:
        for b in labels:
            expected = 1.0 if a == b else 0.0
            if a != b:
                value = inner(g, L2Vector.basis(g, a, 0, 0), L2Vector.basis(g, b, 0, 0))
                tally.add(f"⟨Λu^{a}_{{00}}, Λu^{b}_{{00}}⟩", abs(value))
            tally.add(
                f"⟨Λχ^{a}, Λχ^{b}⟩",
                abs(inner(g, L2Vector.character(g, a), L2Vector.character(g, b)) - expected),
            )
            tally.add(
                f"⟨Λχ_q^{a}, Λχ_q^{b}⟩",
                abs(inner(g, L2Vector.quantum_character(g, a), L2Vector.quantum_character(g, b)) - expected),
            )
    return tally.record(CHECK_ORTHOGONALITY, "Peter–Weyl orthogonality")


def check_transport(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**a / b transport** — b∘a = id, a(φ^triv) = Λ(1), a(φ_q^α) = Λχ_q^α,
    b multiplicative, L² convolution associative, Λ(1)⋆ξ = trivial part of ξ."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    unit = L2Vector.basis(g, g.trivial, 0, 0)
    tally.add("a(φ^triv) = Λ(1)", a_map(g, character_l1(g, g.trivial)).residual(unit))
    for a in g.labels:
        tally.add(f"a(φ_q^{a}) = Λχ_q^{a}", a_map(g, quantum_character_l1(g, a)).residual(L2Vector.quantum_character(g, a)))
    for s in range(ctx.samples):
        f = ctx.random_l1(rng)
        tally.add(f"sample {s}: b(a(f)) = f", b_map(g, a_map(g, f)).residual(f))
        xi, eta, zeta = ctx.random_l2(rng), ctx.random_l2(rng), ctx.random_l2(rng)
        tally.add(
            f"sample {s}: b(ξ⋆η) = b(ξ)⋆b(η)",
            b_map(g, convolve_l2(g, xi, eta)).residual(convolve(g, b_map(g, xi), b_map(g, eta))),
        )
        tally.add(
            f"sample {s}: L² associativity",
            convolve_l2(g, convolve_l2(g, xi, eta), zeta).residual(convolve_l2(g, xi, convolve_l2(g, eta, zeta))),
        )
        tally.add(f"sample {s}: Λ(1)⋆ξ", convolve_l2(g, unit, xi).residual(xi.restricted_to([g.trivial])))
    return tally.record(CHECK_TRANSPORT, "L¹/L² transport")


def _self_adjoint_residual(g, op, xi: L2Vector, eta: L2Vector) -> float:
    return abs(inner(g, op(g, xi), eta) - inner(g, xi, op(g, eta)))


def check_beta2_projection(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**β₂(φ)** — idempotent, self-adjoint, range = span{Λχ^α}, rank = #irreps."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, i, j in basis_order(g):
        image = beta2_haar(g, L2Vector.basis(g, a, i, j))
        block = image.block(g, a)
        n = block.shape[0]
        off_span = np.abs(block - np.trace(block) / n * np.eye(n)).max()
        tally.add(f"β₂Λu^{a}_{{{i}{j}}} ∈ span Λχ^{a}", off_span)
    for a in g.labels:
        chi = L2Vector.character(g, a)
        tally.add(f"β₂Λχ^{a} = Λχ^{a}", beta2_haar(g, chi).residual(chi))
    rank = beta2_rank(g)
    tally.require("rank", rank == len(g.irreps), f"rank {rank} ≠ {len(g.irreps)} irreps")
    for s in range(ctx.samples):
        xi, eta = ctx.random_l2(rng), ctx.random_l2(rng)
        p = beta2_haar(g, xi)
        tally.add(f"sample {s}: P² = P", beta2_haar(g, p).residual(p))
        tally.add(f"sample {s}: ⟨Pξ,η⟩ = ⟨ξ,Pη⟩", _self_adjoint_residual(g, beta2_haar, xi, eta))
    return tally.record(CHECK_BETA2, "β₂(φ) projection")


def check_beta2_route_equality(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Closed form = coproduct route** for β₂(φ) on the full basis and random vectors."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, i, j in basis_order(g):
        e = L2Vector.basis(g, a, i, j)
        tally.add(f"Λu^{a}_{{{i}{j}}}", beta2_haar(g, e).residual(beta2_haar_via_coproduct(g, e)))
    for s in range(ctx.samples):
        xi = ctx.random_l2(rng)
        tally.add(f"sample {s}", beta2_haar(g, xi).residual(beta2_haar_via_coproduct(g, xi)))
    return tally.record(CHECK_BETA2_ROUTES, "β₂(φ) route equality")


def _l2_commutator_witness(g: QuantumGroupData, xi: L2Vector, label: str, threshold: float) -> tuple[float, str]:
    """Largest ‖ξ⋆Λu − Λu⋆ξ‖ over the basis of one block and the first basis vector above threshold."""
    n = g.info(label).dim
    worst = 0.0
    witness = ""
    for i in range(n):
        for j in range(n):
            e = L2Vector.basis(g, label, i, j)
            size = norm(g, convolve_l2(g, xi, e) - convolve_l2(g, e, xi))
            worst = max(worst, size)
            if size > threshold and not witness:
                witness = f"commutator with Λu^{label}_{{{i}{j}}} has norm {size:.3e}"
    return worst, witness


def check_pq_projection(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**P_q** — idempotent, self-adjoint, Λχ_q^α fixed and central; P_q = β₂(φ) on Kac."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a in g.labels:
        qc = L2Vector.quantum_character(g, a)
        tally.add(f"P_qΛχ_q^{a} = Λχ_q^{a}", pq_projection(g, qc).residual(qc))
        worst, _ = _l2_commutator_witness(g, qc, a, ctx.tol)
        tally.add(f"Λχ_q^{a} central", worst)
    if ctx.is_kac:
        for a, i, j in basis_order(g):
            e = L2Vector.basis(g, a, i, j)
            tally.add(f"P_q = β₂ on Λu^{a}_{{{i}{j}}}", pq_projection(g, e).residual(beta2_haar(g, e)))
    for s in range(ctx.samples):
        xi, eta = ctx.random_l2(rng), ctx.random_l2(rng)
        p = pq_projection(g, xi)
        tally.add(f"sample {s}: P² = P", pq_projection(g, p).residual(p))
        tally.add(f"sample {s}: ⟨Pξ,η⟩ = ⟨ξ,Pη⟩", _self_adjoint_residual(g, pq_projection, xi, eta))
    return tally.record(CHECK_PQ, "P_q projection")


def check_projection_separation(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Characters vs. quantum characters in L²** — Λχ_q^α is central in both
    modes; on non-Kac instances Λχ^α with non-constant eigenvalues is not
    (expected failure with explicit witness)."""
    g = ctx.g
    name = "projection separation"
    if ctx.is_kac:
        tally = _Tally(ctx.tol)
        for a in g.labels:
            worst, _ = _l2_commutator_witness(g, L2Vector.character(g, a), a, ctx.tol)
            tally.add(f"Λχ^{a} central", worst)
        return tally.record(CHECK_SEPARATION, name)

    margin = EXPECTED_FAILURE_MARGIN * ctx.tol
    rows: list[dict] = []
    witnesses: list[str] = []
    worst_all = 0.0
    for a in g.labels:
        qc = b_map(g, L2Vector.quantum_character(g, a))
        for mode in (MODE_COMMUTATOR, MODE_SCALAR_BLOCKS):
            result = is_central(g, qc, mode, tol=ctx.tol)
            if not result.central:
                rows.append({"case": f"Λχ_q^{a} not central ({mode}): {result.witness}", "residual": result.residual})
        if not _non_constant(g, a, ctx.tol):
            continue
        worst, witness = _l2_commutator_witness(g, L2Vector.character(g, a), a, margin)
        worst_all = max(worst_all, worst)
        if witness:
            witnesses.append(f"Λχ^{a}: {witness}")
        else:
            rows.append({"case": f"Λχ^{a} not detected as non-central", "residual": worst})
    return _expected_failure_record(CHECK_SEPARATION, name, rows, witnesses, worst_all)


def check_expansion(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**ξ = Σ_α d_α Λχ_q^α ⋆ ξ** on the basis, zero and seeded random vectors."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    tally.add("0", expand_quantum_characters(g, L2Vector.zero()).norm_max())
    for a, i, j in basis_order(g):
        e = L2Vector.basis(g, a, i, j)
        tally.add(f"Λu^{a}_{{{i}{j}}}", expand_quantum_characters(g, e).residual(e))
    for s in range(ctx.samples):
        xi = ctx.random_l2(rng)
        tally.add(f"sample {s}", expand_quantum_characters(g, xi).residual(xi))
    return tally.record(CHECK_EXPANSION, "quantum-character expansion")


def _random_character_vector(g: QuantumGroupData, rng: np.random.Generator) -> L2Vector:
    total = L2Vector.zero()
    for a in g.labels:
        total = total + L2Vector.character(g, a) * complex(rng.random(), rng.random())
    return total


def check_star(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**Star map** — involution, Λχ^α ↦ Λχ^ᾱ, isometry and traciality on span{Λχ^α}."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, i, j in basis_order(g):
        e = L2Vector.basis(g, a, i, j)
        tally.add(f"star² Λu^{a}_{{{i}{j}}}", star(g, star(g, e)).residual(e))
    for a, info in g.irreps.items():
        tally.add(
            f"star Λχ^{a} = Λχ^{info.conjugate}",
            star(g, L2Vector.character(g, a)).residual(L2Vector.character(g, info.conjugate)),
        )
    for s in range(ctx.samples):
        xi = ctx.random_l2(rng)
        tally.add(f"sample {s}: star² = id", star(g, star(g, xi)).residual(xi))
        x, y = _random_character_vector(g, rng), _random_character_vector(g, rng)
        tally.add(f"sample {s}: ‖star x‖ = ‖x‖", abs(norm(g, star(g, x)) - norm(g, x)))
        tally.add(
            f"sample {s}: ⟨Λy,Λx⟩ = ⟨Λx*,Λy*⟩",
            abs(inner(g, y, x) - inner(g, star(g, x), star(g, y))),
        )
    return tally.record(CHECK_STAR, "star map")


def check_restriction(ctx: SuiteContext, rng: np.random.Generator) -> CheckRecord:
    """**r(u^α_{ij}) = δ_{ij}(λ_i/d_α)χ^α**, r(χ^α) = χ^α and r∘r = r."""
    g = ctx.g
    tally = _Tally(ctx.tol)
    for a, i, j in basis_order(g):
        info = g.info(a)
        expected = CharacterRingElement(
            {a: info.f_eigenvalues[i] / info.quantum_dimension if i == j else 0.0}
        )
        tally.add(f"r(u^{a}_{{{i}{j}}})", restrict_r(g, LinfElement.basis(g, a, i, j)).residual(expected))
    for a in g.labels:
        chi = character(g, a)
        tally.add(f"r(χ^{a})", restrict_r(g, character_to_coefficients(g, chi)).residual(chi))
    for s in range(ctx.samples):
        x = LinfElement.random(g, rng)
        once = restrict_r(g, x)
        twice = restrict_r(g, character_to_coefficients(g, once))
        tally.add(f"sample {s}: r∘r = r", twice.residual(once))
    return tally.record(CHECK_RESTRICTION, "restriction map r")


# ╔═══════════════════════════════════════════════════════════════════════════╗
# ║  RUNNER                                                                   ║
# ╚═══════════════════════════════════════════════════════════════════════════╝

# Registry of checks; a check's position seeds its private generator.
CHECKS: list[Callable[[SuiteContext, np.random.Generator], CheckRecord]] = [
    check_fusion_consistency,
    check_fusion_conjugation,
    check_orthogonality,
    check_idempotent_quantum_characters,
    check_quantum_character_action,
    check_matrix_units,
    check_lambda_hat,
    check_l1_associativity,
    check_involution,
    check_center,
    check_kac_characters,
    check_plain_character_centrality,
    check_beta1,
    check_beta1_contractivity,
    check_oracle_convolution,
    check_oracle_beta1,
    check_transport,
    check_beta2_projection,
    check_beta2_route_equality,
    check_pq_projection,
    check_projection_separation,
    check_expansion,
    check_star,
    check_restriction,
]

CHECK_IDS: dict[Callable, str] = {
    check_fusion_consistency: CHECK_FUSION_CONSISTENCY,
    check_fusion_conjugation: CHECK_FUSION_CONJUGATION,
    check_orthogonality: CHECK_ORTHOGONALITY,
    check_idempotent_quantum_characters: CHECK_IDEMPOTENT,
    check_quantum_character_action: CHECK_QC_ACTION,
    check_matrix_units: CHECK_MATRIX_UNITS,
    check_lambda_hat: CHECK_LAMBDA_HAT,
    check_l1_associativity: CHECK_L1_ASSOCIATIVITY,
    check_involution: CHECK_INVOLUTION,
    check_center: CHECK_CENTER,
    check_kac_characters: CHECK_KAC_CHARACTERS,
    check_plain_character_centrality: CHECK_PLAIN_CHARACTERS,
    check_beta1: CHECK_BETA1,
    check_beta1_contractivity: CHECK_BETA1_CONTRACTIVITY,
    check_oracle_convolution: CHECK_ORACLE_CONVOLUTION,
    check_oracle_beta1: CHECK_ORACLE_BETA1,
    check_transport: CHECK_TRANSPORT,
    check_beta2_projection: CHECK_BETA2,
    check_beta2_route_equality: CHECK_BETA2_ROUTES,
    check_pq_projection: CHECK_PQ,
    check_projection_separation: CHECK_SEPARATION,
    check_expansion: CHECK_EXPANSION,
    check_star: CHECK_STAR,
    check_restriction: CHECK_RESTRICTION,
}


def _run_one(
    index: int,
    func: Callable[[SuiteContext, np.random.Generator], CheckRecord],
    ctx: SuiteContext,
    seed: int,
) -> CheckRecord:
    check_id = CHECK_IDS[func]
    rng = np.random.default_rng([seed, index])
    try:
        record = func(ctx, rng)
    except Exception as exc:  # reported as a failed record
        logger.exception("check %s raised", check_id)
        record = CheckRecord(
            check_id=check_id,
            check_name=func.__name__.removeprefix("check_").replace("_", " "),
            status=STATUS_FAIL,
            summary=f"✗ {check_id} raised {type(exc).__name__}",
            worst_residual=math.inf,
            witness=f"{type(exc).__name__}: {exc}",
            issue_count=1,
        )
    logger.debug("%s → %s (%s)", record.check_id, record.status, record.summary)
    return record


def run_suite(
    g: QuantumGroupData,
    seed: int = DEFAULT_SEED,
    tolerance: Optional[float] = None,
    *,
    norm_oracle: Optional[NormOracle] = None,
    brute_force: Optional[BruteForceOracle] = None,
    samples: int = RANDOM_SAMPLE_COUNT,
    workers: int = 1,
    checks: Optional[Sequence[str]] = None,
) -> VerificationReport:
    """Run the invariant suite and return its report.

    Parameters
    ----------
    g : QuantumGroupData
    seed : int
        Seeds every randomized check; the report is a pure function of
        (instance, seed, tolerance).
    tolerance : float, optional
        Residual threshold; defaults to the instance tolerance.
    norm_oracle, brute_force : optional
        Enable the contractivity and oracle-equivalence checks.
    samples : int
        Random elements / pairs / triples per randomized check.
    workers : int
        Run checks on this many threads.
    checks : list[str], optional
        Run only checks whose id appears in this list.

    Raises
    ------
    InvalidParameterError
        Non-positive tolerance, fewer than one sample or an unknown check id.
    InstanceValidationError
        The instance fails a structural invariant (fusion-table problems are
        reported by the ``fusion.consistency`` check instead).
    """
    tol = g.tolerance if tolerance is None else float(tolerance)
    if not (math.isfinite(tol) and tol > 0):
        raise InvalidParameterError(f"tolerance must be positive, got {tolerance!r}")
    if samples < 1:
        raise InvalidParameterError(f"samples must be at least 1, got {samples}")
    if checks is not None:
        if not checks:
            raise InvalidParameterError("empty check selection")
        unknown = sorted(set(checks) - set(CHECK_IDS.values()))
        if unknown:
            raise InvalidParameterError(f"unknown check id(s): {', '.join(unknown)}")

    structural = [r for r in validate_structure(g) if not r.passed]
    if structural:
        report = VerificationReport(instance=g.name, checks=structural, seed=seed, tolerance=tol)
        raise InstanceValidationError(
            f"instance {g.name!r} is structurally invalid: "
            f"{structural[0].check_name} ({structural[0].witness})",
            report,
        )

    ctx = SuiteContext(g, tol, samples, norm_oracle, brute_force)
    selected = [
        (index, func)
        for index, func in enumerate(CHECKS)
        if checks is None or CHECK_IDS[func] in checks
    ]
    logger.info(
        "running %d check(s) on %r (seed=%d, tolerance=%g, workers=%d)",
        len(selected), g.name, seed, tol, workers,
    )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda item: _run_one(item[0], item[1], ctx, seed), selected))
    else:
        records = [_run_one(index, func, ctx, seed) for index, func in selected]

    report = VerificationReport(instance=g.name, checks=records, seed=seed, tolerance=tol)
    logger.info("%r: %d check(s), %d violation(s)", g.name, len(records), len(report.violations))
    return report
