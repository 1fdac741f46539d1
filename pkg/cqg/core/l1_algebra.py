"""
The convolution algebra L¹(𝔾) on the basis φ^α_{ij} = u^α_{ij}·φ.

Structure constants
-------------------
    φ^α_{ij} ⋆ φ^β_{kl} = δ_{αβ} δ_{jk} / (λ^α_j d_α) · φ^α_{il}

so on blocks the product is ``F_α · diag(1/(λ^α d_α)) · H_α`` and never leaves
the union of the factors' supports.  The involution is the conjugate
transpose of every block, and

    λ̂(φ^α_{ij}) = E_{ij} / (d_α √(λ_i λ_j))

realizes L¹ inside L∞(𝔾̂) ≅ ⊕ M_{n_α}(ℂ), so that
``e^α_{ij} = d_α √(λ_i λ_j) λ̂(φ^α_{ij})`` are matrix units.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from cqg.config.constants import (
    CENTRALITY_MODES,
    MODE_COMMUTATOR,
    MODE_SCALAR_BLOCKS,
    SPACE_DUAL,
)
from cqg.core.elements import BlockElement, L1Element, require_space
from cqg.core.errors import NoNormOracle, NonKacInstance, UnknownModeError
from cqg.core.fusion_data import QuantumGroupData

if TYPE_CHECKING:
    from cqg.core.instances import NormOracle

logger = logging.getLogger(__name__)


class BlockMatrixFamily(BlockElement):
    """A family of n_α×n_α matrices, one per irrep: an element of ⊕ M_{n_α}(ℂ)."""

    space = SPACE_DUAL

    def __matmul__(self, other: "BlockMatrixFamily") -> "BlockMatrixFamily":
        self._require_same(other)
        return BlockMatrixFamily({
            a: self.blocks[a] @ other.blocks[a]
            for a in self.blocks.keys() & other.blocks.keys()
        })

    def adjoint(self) -> "BlockMatrixFamily":
        return BlockMatrixFamily({a: b.conj().T for a, b in self.blocks.items()})


# ═══════════════════════════════════════════════════════════════════════════════
# Block kernels
# ═══════════════════════════════════════════════════════════════════════════════

def structure_weights(g: QuantumGroupData, label: str) -> np.ndarray:
    """The vector 1/(λ^α_j d_α), j = 0 … n_α−1."""
    info = g.info(label)
    return 1.0 / (info.eigenvalues * info.quantum_dimension)


def convolve_blocks(f_block: np.ndarray, h_block: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """F · diag(weights) · H."""
    return (f_block * weights[np.newaxis, :]) @ h_block


# ═══════════════════════════════════════════════════════════════════════════════
# Operations
# ═══════════════════════════════════════════════════════════════════════════════

def convolve(g: QuantumGroupData, f: L1Element, h: L1Element) -> L1Element:
    """f ⋆ h by the structure-constant rule."""
    require_space(f, L1Element, "convolve")
    require_space(h, L1Element, "convolve")
    blocks = {}
    for a in f.blocks.keys() & h.blocks.keys():
        blocks[a] = convolve_blocks(f.blocks[a], h.blocks[a], structure_weights(g, a))
    return L1Element(blocks)


def involute(g: QuantumGroupData, f: L1Element) -> L1Element:
    """Conjugate-linear involution (c·φ^α_{ij})^o = c̄·φ^α_{ji}."""
    require_space(f, L1Element, "involute")
    return L1Element({a: b.conj().T.copy() for a, b in f.blocks.items()})


def character_l1(g: QuantumGroupData, label: str) -> L1Element:
    """φ^α = Σ_i φ^α_{ii}."""
    return L1Element.character(g, label)


def quantum_character_l1(g: QuantumGroupData, label: str) -> L1Element:
    """φ_q^α = Σ_i λ^α_i φ^α_{ii}."""
    return L1Element.quantum_character(g, label)


def lambda_hat(g: QuantumGroupData, f: L1Element) -> BlockMatrixFamily:
    """Image of f in ⊕ M_{n_α}(ℂ): block diag(λ^{-½}) F diag(λ^{-½}) / d_α."""
    require_space(f, L1Element, "lambda_hat")
    blocks = {}
    for a, b in f.blocks.items():
        info = g.info(a)
        s = 1.0 / np.sqrt(info.eigenvalues)
        blocks[a] = (s[:, np.newaxis] * b * s[np.newaxis, :]) / info.quantum_dimension
    return BlockMatrixFamily(blocks)


def matrix_unit(g: QuantumGroupData, label: str, i: int, j: int) -> BlockMatrixFamily:
    """e^α_{ij} = d_α √(λ_i λ_j) λ̂(φ^α_{ij})."""
    info = g.info(label)
    scale = info.quantum_dimension * np.sqrt(info.f_eigenvalues[i] * info.f_eigenvalues[j])
    return lambda_hat(g, L1Element.basis(g, label, i, j)) * float(scale)


@dataclass(frozen=True)
class CentralityResult:
    """Outcome of :func:`is_central`.

    ``witness`` names the first violated pair, empty when central.
    """

    central: bool
    residual: float
    witness: str = ""

    def __bool__(self) -> bool:
        return self.central


def is_central(
    g: QuantumGroupData,
    f: L1Element,
    mode: str = MODE_COMMUTATOR,
    *,
    tol: Optional[float] = None,
) -> CentralityResult:
    """Decide whether f lies in the center of the truncated L¹(𝔾).

    Parameters
    ----------
    mode : {"commutator", "scalar-blocks"}
        ``commutator`` compares f⋆φ^α_{ij} with φ^α_{ij}⋆f for every basis
        functional of every block in f's support (other blocks convolve to 0
        on both sides).  ``scalar-blocks`` checks that every block of λ̂(f) is
        a multiple of the identity.
    tol : float, optional
        Residual threshold; defaults to the instance tolerance.

    Raises
    ------
    UnknownModeError
    """
    if mode not in CENTRALITY_MODES:
        raise UnknownModeError(f"unknown centrality mode {mode!r} (expected {', '.join(CENTRALITY_MODES)})")
    require_space(f, L1Element, "is_central")
    tol = g.tolerance if tol is None else tol

    if mode == MODE_COMMUTATOR:
        return _central_by_commutators(g, f, tol)
    return _central_by_scalar_blocks(g, f, tol)


def _central_by_commutators(g: QuantumGroupData, f: L1Element, tol: float) -> CentralityResult:
    worst = 0.0
    witness = ""
    for a in g.labels:
        block = f.blocks.get(a)
        if block is None:
            continue
        w = structure_weights(g, a)
        n = block.shape[0]
        # f⋆φ_ij has column j equal to F[:, i]·w_i; φ_ij⋆f has row i equal to w_j·F[j, :].
        for i in range(n):
            for j in range(n):
                left = np.zeros((n, n), dtype=complex)
                left[:, j] = block[:, i] * w[i]
                right = np.zeros((n, n), dtype=complex)
                right[i, :] = w[j] * block[j, :]
                residual = float(np.abs(left - right).max())
                if residual > worst:
                    worst = residual
                if residual > tol and not witness:
                    witness = (
                        f"φ^{a}_{{{i}{j}}}: ‖f⋆φ − φ⋆f‖_max = {residual:.3e}"
                    )
    return CentralityResult(central=not witness, residual=worst, witness=witness)


def _central_by_scalar_blocks(g: QuantumGroupData, f: L1Element, tol: float) -> CentralityResult:
    worst = 0.0
    witness = ""
    for a, block in lambda_hat(g, f).blocks.items():
        n = block.shape[0]
        scalar = np.trace(block) / n
        deviation = np.abs(block - scalar * np.eye(n))
        residual = float(deviation.max()) if deviation.size else 0.0
        worst = max(worst, residual)
        if residual > tol and not witness:
            i, j = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
            witness = f"λ̂(f) block {a} is not scalar at ({i}, {j}): {residual:.3e}"
    return CentralityResult(central=not witness, residual=worst, witness=witness)


def beta1(g: QuantumGroupData, f: L1Element, *, tol: Optional[float] = None) -> L1Element:
    """The Kac central projection β₁(φ^α_{ij}) = (δ_{ij}/n_α)·φ^α.

    ``tol`` bounds |λ − 1| in the Kac test; defaults to the instance tolerance.

    Raises
    ------
    NonKacInstance
        ``g`` has an F-eigenvalue different from 1.
    """
    require_space(f, L1Element, "beta1")
    if not g.kac_within(g.tolerance if tol is None else tol):
        raise NonKacInstance(f"beta1 is defined only for Kac instances; {g.name!r} is not Kac")
    blocks = {}
    for a, b in f.blocks.items():
        n = b.shape[0]
        blocks[a] = (np.trace(b) / n) * np.eye(n, dtype=complex)
    return L1Element(blocks)


def l1_norm(g: QuantumGroupData, f: L1Element, oracle: Optional["NormOracle"]) -> float:
    """‖f‖_{L¹} as computed by the instance's norm oracle.

    Raises
    ------
    NoNormOracle
    """
    require_space(f, L1Element, "l1_norm")
    if oracle is None:
        raise NoNormOracle(f"instance {g.name!r} provides no L¹ norm oracle")
    return float(oracle.l1_norm(f))


def center_dimension(g: QuantumGroupData) -> int:
    """Dimension of the center of the truncated L¹(𝔾).

    Computed as the null space of f ↦ λ̂(f) − (tr λ̂(f)/n)·I block by block,
    which equals the number of irreps.  The entries of λ̂(φ^α_{ij}) spread
    over many orders of magnitude for small q, so every column is scaled to
    unit norm (the rank is unchanged) and the rank cutoff is relative to the
    largest singular value.
    """
    total = 0
    for a, info in g.irreps.items():
        n = info.dim
        s = 1.0 / np.sqrt(info.eigenvalues)
        columns = []
        for k in range(n * n):
            i, j = divmod(k, n)
            b = np.zeros((n, n))
            b[i, j] = s[i] * s[j] / info.quantum_dimension
            columns.append((b - np.trace(b) / n * np.eye(n)).ravel())
        operator = np.column_stack(columns)
        lengths = np.linalg.norm(operator, axis=0)
        operator = operator / np.where(lengths > 0, lengths, 1.0)
        singular = np.linalg.svd(operator, compute_uv=False)
        cutoff = g.tolerance * max(1.0, float(singular.max(initial=0.0)))
        nullity = n * n - int(np.count_nonzero(singular > cutoff))
        logger.debug("center of block %s has dimension %d", a, nullity)
        total += nullity
    return total
