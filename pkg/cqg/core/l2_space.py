"""
The Hilbert space L²(𝔾) on the basis Λ(u^α_{ij}).

Peter–Weyl orthogonality fixes the inner product

    ⟨Λ(u^α_{ij}), Λ(u^β_{kl})⟩ = δ_{αβ} δ_{ik} δ_{jl} / (λ^α_i d_α),

taken linear in the **first** argument.  The maps ``a`` and ``b`` identify
L¹ and L² coefficientwise on the finite window, which transports the L¹
convolution to L².  The projections β₂(φ) (closed form and coproduct route)
and P_q, the star map, the quantum-character expansion and the restriction
map r are implemented blockwise.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from cqg.core.elements import (
    L1Element,
    L2Vector,
    LinfElement,
    basis_order,
    require_space,
)
from cqg.core.fusion_data import CharacterRingElement, QuantumGroupData
from cqg.core.l1_algebra import convolve, convolve_blocks

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════════════════
# Inner product and the a / b transport
# ═══════════════════════════════════════════════════════════════════════════════

def inner(g: QuantumGroupData, xi: L2Vector, eta: L2Vector) -> complex:
    """⟨ξ, η⟩, linear in ξ and conjugate-linear in η."""
    require_space(xi, L2Vector, "inner")
    require_space(eta, L2Vector, "inner")
    total = 0j
    for a in xi.blocks.keys() & eta.blocks.keys():
        info = g.info(a)
        row_weights = 1.0 / (info.eigenvalues * info.quantum_dimension)
        total += complex(np.sum(row_weights[:, np.newaxis] * xi.blocks[a] * eta.blocks[a].conj()))
    return total


def norm(g: QuantumGroupData, xi: L2Vector) -> float:
    return float(np.sqrt(max(inner(g, xi, xi).real, 0.0)))


def a_map(g: QuantumGroupData, f: L1Element) -> L2Vector:
    """a(φ^α_{ij}) = Λ(u^α_{ij})."""
    require_space(f, L1Element, "a_map")
    return L2Vector({a: b.copy() for a, b in f.blocks.items()})


def b_map(g: QuantumGroupData, xi: L2Vector) -> L1Element:
    """Inverse of :func:`a_map` on the window."""
    require_space(xi, L2Vector, "b_map")
    return L1Element({a: b.copy() for a, b in xi.blocks.items()})


def convolve_l2(g: QuantumGroupData, xi: L2Vector, eta: L2Vector) -> L2Vector:
    """ξ ⋆ η = a(b(ξ) ⋆ b(η))."""
    return a_map(g, convolve(g, b_map(g, xi), b_map(g, eta)))


def left_action(g: QuantumGroupData, f: L1Element, xi: L2Vector) -> L2Vector:
    """λ(f)ξ = a(f ⋆ b(ξ))."""
    return a_map(g, convolve(g, f, b_map(g, xi)))


# ═══════════════════════════════════════════════════════════════════════════════
# β₂(φ) — closed form and coproduct route
# ═══════════════════════════════════════════════════════════════════════════════

def beta2_haar(g: QuantumGroupData, xi: L2Vector) -> L2Vector:
    """β₂(φ)Λ(u^α_{kl}) = (δ_{kl}/(λ^α_k d_α))·Λχ^α."""
    require_space(xi, L2Vector, "beta2_haar")
    blocks = {}
    for a, b in xi.blocks.items():
        info = g.info(a)
        c = np.sum(np.diag(b) / (info.eigenvalues * info.quantum_dimension))
        blocks[a] = c * np.eye(info.dim, dtype=complex)
    return L2Vector(blocks)


@lru_cache(maxsize=256)
def _coproduct_operator(eigenvalues: tuple[float, ...]) -> np.ndarray:
    """Matrix of β₂(φ) on one block, assembled from Γ(u_{ij}) = Σ_k u_{ik} ⊗ u_{kj}.

    Column ``i·n + j`` is Σ_k λ(φ_{kj}) Λ(u_{ik}) = Σ_k a(φ_{kj} ⋆ φ_{ik}).
    """
    lam = np.asarray(eigenvalues, dtype=float)
    n = lam.size
    weights = 1.0 / (lam * lam.sum())
    operator = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            image = np.zeros((n, n), dtype=complex)
            for k in range(n):
                y = np.zeros((n, n))
                y[k, j] = 1.0
                x = np.zeros((n, n))
                x[i, k] = 1.0
                image += convolve_blocks(y, x, weights)
            operator[:, i * n + j] = image.ravel()
    return operator


def beta2_haar_via_coproduct(g: QuantumGroupData, xi: L2Vector) -> L2Vector:
    """β₂(φ)ξ = Σ λ(y_k·φ)Λ(x_k) along the coproduct Γ(x) = Σ x_k ⊗ y_k.

    Independent of :func:`beta2_haar`; the two must agree.
    """
    require_space(xi, L2Vector, "beta2_haar_via_coproduct")
    blocks = {}
    for a, b in xi.blocks.items():
        info = g.info(a)
        operator = _coproduct_operator(tuple(info.f_eigenvalues))
        blocks[a] = (operator @ b.ravel()).reshape(b.shape)
    return L2Vector(blocks)


def beta2_matrix(g: QuantumGroupData) -> np.ndarray:
    """Matrix of β₂(φ) on the full window basis (columns in basis order)."""
    columns = [
        beta2_haar(g, L2Vector.basis(g, a, i, j)).flatten(g)
        for a, i, j in basis_order(g)
    ]
    if not columns:
        return np.zeros((0, 0), dtype=complex)
    return np.column_stack(columns)


def beta2_rank(g: QuantumGroupData) -> int:
    """Rank of β₂(φ) over the window; equals the number of irreps."""
    matrix = beta2_matrix(g)
    if matrix.size == 0:
        return 0
    return int(np.linalg.matrix_rank(matrix, tol=g.tolerance))


# ═══════════════════════════════════════════════════════════════════════════════
# P_q, star, expansion, restriction
# ═══════════════════════════════════════════════════════════════════════════════

def pq_projection(g: QuantumGroupData, xi: L2Vector) -> L2Vector:
    """Orthogonal projection onto span{Λχ_q^α}: P_qΛ(u^α_{kl}) = (δ_{kl}/d_α)·Λχ_q^α."""
    require_space(xi, L2Vector, "pq_projection")
    blocks = {}
    for a, b in xi.blocks.items():
        info = g.info(a)
        blocks[a] = (np.trace(b) / info.quantum_dimension) * np.diag(info.eigenvalues).astype(complex)
    return L2Vector(blocks)


def star(g: QuantumGroupData, xi: L2Vector) -> L2Vector:
    """Λ(x) ↦ Λ(x*): Λ(u^α_{ij}) ↦ √(λ^α_j/λ^α_i)·Λ(u^ᾱ_{σ(i)σ(j)}), conjugate-linear."""
    require_space(xi, L2Vector, "star")
    blocks: dict[str, np.ndarray] = {}
    for a, b in xi.blocks.items():
        info = g.info(a)
        lam = info.eigenvalues
        sigma = np.asarray(info.conj_index_map, dtype=int)
        scaled = b.conj() * np.sqrt(lam[np.newaxis, :] / lam[:, np.newaxis])
        image = np.zeros_like(scaled)
        image[np.ix_(sigma, sigma)] = scaled
        bar = info.conjugate
        blocks[bar] = blocks[bar] + image if bar in blocks else image
    return L2Vector(blocks)


def expand_quantum_characters(g: QuantumGroupData, xi: L2Vector) -> L2Vector:
    """Σ_α d_α Λχ_q^α ⋆ ξ over the window; reproduces ξ."""
    require_space(xi, L2Vector, "expand_quantum_characters")
    total = L2Vector.zero()
    for a, info in g.irreps.items():
        qc = L2Vector.quantum_character(g, a)
        total = total + convolve_l2(g, qc, xi) * info.quantum_dimension
    return total


def restrict_r(g: QuantumGroupData, x: LinfElement) -> CharacterRingElement:
    """r(u^α_{ij}) = (δ_{ij} λ^α_i / d_α)·χ^α, extended linearly."""
    require_space(x, LinfElement, "restrict_r")
    coeffs = {}
    for a, b in x.blocks.items():
        info = g.info(a)
        coeffs[a] = complex(np.sum(np.diag(b) * info.eigenvalues) / info.quantum_dimension)
    return CharacterRingElement(coeffs)


def character_to_coefficients(g: QuantumGroupData, x: CharacterRingElement) -> LinfElement:
    """χ^α ↦ Σ_i u^α_{ii}."""
    blocks = {}
    for a, c in x.coeffs.items():
        n = g.info(a).dim
        blocks[a] = complex(c) * np.eye(n, dtype=complex)
    return LinfElement(blocks)
