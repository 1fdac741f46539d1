"""
Built-in quantum-group instances and brute-force oracles.

Finite groups enter twice:

    - ``finite_group_dual`` — the dual quantum group Γ̂: one 1-dimensional
      irrep per element, fusion is the group law.
    - ``finite_group_function_algebra`` — C(Γ) with explicit unitary irreps;
      fusion comes from character inner products and every L¹ computation can
      be replayed on honest functions by the :class:`BruteForceOracle`.

Both carry a :class:`NormOracle` that realizes the coefficient algebra
faithfully on ℓ²(Γ) (multiplication operators for C(Γ), the left regular
representation for Γ̂), where the Haar state is the normalized trace.

The q-deformed families are ``suq2_truncated`` (SU_q(2)) and
``on_plus_truncated`` (the free orthogonal quantum group O_N⁺), both cut off
at a level L.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from cqg.config.constants import (
    BUILTIN_ONPLUS,
    BUILTIN_S3,
    BUILTIN_SUQ2,
    CHARACTER_ROUNDING_TOLERANCE,
    CYCLIC_PREFIX,
    DEFAULT_LEVEL,
    DEFAULT_ONPLUS_LEVEL,
    DEFAULT_ONPLUS_N,
    DEFAULT_Q,
    DEFAULT_TOLERANCE,
    DUAL_PREFIX,
    FUNCTION_PREFIX,
    GROUP_KLEIN,
    GROUP_S3,
    S3_SIGN,
    S3_STANDARD,
    S3_TRIVIAL,
)
from cqg.core.elements import L1Element, LinfElement, require_space
from cqg.core.errors import (
    IncompleteIrrepSetError,
    InvalidGroupError,
    InvalidParameterError,
    NonUnitaryIrrepError,
    UnknownInstanceError,
)
from cqg.core.fusion_data import (
    FusionEntry,
    FusionTable,
    IrrepInfo,
    QuantumGroupData,
)

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════════════════
# Finite groups
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class FiniteGroupPresentation:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the index of ``elements[a]·elements[b]``.
    """

    name: str
    elements: tuple[str, ...]
    table: np.ndarray = field(repr=False)
    identity: str

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, element: str) -> int:
        try:
            return self.elements.index(element)
        except ValueError:
            raise InvalidGroupError(f"{element!r} is not an element of {self.name}") from None

    def multiply(self, a: str, b: str) -> str:
        return self.elements[int(self.table[self.index(a), self.index(b)])]

    @property
    def inverse_indices(self) -> np.ndarray:
        """``inverse_indices[a]`` is the index of elements[a]⁻¹."""
        e = self.index(self.identity)
        return np.argmax(self.table == e, axis=1)

    def inverse(self, a: str) -> str:
        return self.elements[int(self.inverse_indices[self.index(a)])]

    def validate(self) -> None:
        """Check the group axioms.

        Raises
        ------
        InvalidGroupError
        """
        n = self.order
        if n == 0:
            raise InvalidGroupError(f"{self.name}: empty element list")
        if len(set(self.elements)) != n:
            raise InvalidGroupError(f"{self.name}: duplicate element tokens")
        if self.identity not in self.elements:
            raise InvalidGroupError(f"{self.name}: identity {self.identity!r} is not an element")
        table = np.asarray(self.table)
        if table.shape != (n, n):
            raise InvalidGroupError(f"{self.name}: table shape {table.shape} is not ({n}, {n})")
        if not np.issubdtype(table.dtype, np.integer) or table.min() < 0 or table.max() >= n:
            raise InvalidGroupError(f"{self.name}: table entries must be element indices")

        e = self.index(self.identity)
        idx = np.arange(n)
        if not (np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx)):
            raise InvalidGroupError(f"{self.name}: {self.identity!r} is not a two-sided identity")

        # (ab)c vs a(bc) over all triples
        left = table[table[:, :, np.newaxis], idx[np.newaxis, np.newaxis, :]]
        right = table[idx[:, np.newaxis, np.newaxis], table[np.newaxis, :, :]]
        bad = np.argwhere(left != right)
        if bad.size:
            a, b, c = (self.elements[k] for k in bad[0])
            raise InvalidGroupError(f"{self.name}: associativity fails at ({a}, {b}, {c})")

        for a in range(n):
            if not np.any(table[a] == e) or not np.any(table[:, a] == e):
                raise InvalidGroupError(f"{self.name}: {self.elements[a]!r} has no inverse")


def cyclic_group(n: int) -> FiniteGroupPresentation:
    """ℤ_n with elements ``"0" … "n-1"``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameterError(f"cyclic group order must be a positive integer, got {n!r}")
    idx = np.arange(n)
    table = (idx[:, np.newaxis] + idx[np.newaxis, :]) % n
    return FiniteGroupPresentation(f"Z{n}", tuple(str(k) for k in range(n)), table, "0")


def klein_group() -> FiniteGroupPresentation:
    """ℤ₂ × ℤ₂ with elements e, a, b, c = ab."""
    elements = ("e", "a", "b", "c")
    # XOR of the bit patterns e=00, a=01, b=10, c=11
    idx = np.arange(4)
    table = idx[:, np.newaxis] ^ idx[np.newaxis, :]
    return FiniteGroupPresentation("V4", elements, table, "e")


S3_ELEMENTS = ("012", "021", "102", "120", "201", "210")


def _permutation(token: str) -> tuple[int, ...]:
    return tuple(int(c) for c in token)


def symmetric_group_s3() -> FiniteGroupPresentation:
    """S₃ as permutations of (0, 1, 2); ``"120"`` maps 0→1, 1→2, 2→0.

    The product is composition, (p·q)(i) = p(q(i)).
    """
    perms = [_permutation(t) for t in S3_ELEMENTS]
    index = {p: k for k, p in enumerate(perms)}
    table = np.array(
        [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms],
        dtype=int,
    )
    return FiniteGroupPresentation("S3", S3_ELEMENTS, table, "012")


# ═══════════════════════════════════════════════════════════════════════════════
# Explicit irreducible representations
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class ExplicitIrrep:
    """Unitary matrices π(γ) for every group element, keyed by element token."""

    label: str
    matrices: Mapping[str, np.ndarray] = field(repr=False)

    @property
    def dim(self) -> int:
        first = next(iter(self.matrices.values()))
        return int(np.asarray(first).shape[0])

    def stacked(self, p: FiniteGroupPresentation) -> np.ndarray:
        """Array of shape (|Γ|, n, n) in the group's element order."""
        return np.stack([np.asarray(self.matrices[e], dtype=complex) for e in p.elements])

    def character(self, p: FiniteGroupPresentation) -> np.ndarray:
        return np.trace(self.stacked(p), axis1=1, axis2=2)

    def validate(self, p: FiniteGroupPresentation, tol: float = DEFAULT_TOLERANCE) -> None:
        """Unitarity and π(γ)π(η) = π(γη).

        Raises
        ------
        NonUnitaryIrrepError
        """
        missing = [e for e in p.elements if e not in self.matrices]
        if missing:
            raise NonUnitaryIrrepError(f"irrep {self.label!r}: no matrix for {missing}")
        mats = self.stacked(p)
        n = self.dim
        if mats.shape[1:] != (n, n):
            raise NonUnitaryIrrepError(f"irrep {self.label!r}: matrices are not all {n}×{n}")
        eye = np.eye(n)
        for e, m in zip(p.elements, mats):
            if np.abs(m.conj().T @ m - eye).max() > tol:
                raise NonUnitaryIrrepError(f"irrep {self.label!r}: π({e}) is not unitary")
        for a in range(p.order):
            for b in range(p.order):
                residual = np.abs(mats[a] @ mats[b] - mats[int(p.table[a, b])]).max()
                if residual > tol:
                    raise NonUnitaryIrrepError(
                        f"irrep {self.label!r}: π({p.elements[a]})π({p.elements[b]}) "
                        f"≠ π({p.elements[a]}·{p.elements[b]}) (residual {residual:.3e})"
                    )


def s3_irreps(p: Optional[FiniteGroupPresentation] = None) -> list[ExplicitIrrep]:
    """Trivial ``t``, sign ``s`` and the 2-dimensional standard irrep ``v`` of S₃.

    ``v`` is the permutation representation restricted to the sum-zero plane,
    in the orthonormal basis (1,−1,0)/√2, (1,1,−2)/√6.
    """
    p = p or symmetric_group_s3()
    basis = np.column_stack([
        np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0),
        np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0),
    ])
    trivial, sign, standard = {}, {}, {}
    for token in p.elements:
        perm = _permutation(token)
        mat = np.zeros((3, 3))
        for i in range(3):
            mat[perm[i], i] = 1.0
        trivial[token] = np.ones((1, 1))
        sign[token] = np.array([[round(np.linalg.det(mat))]], dtype=float)
        standard[token] = basis.T @ mat @ basis
    return [
        ExplicitIrrep(S3_TRIVIAL, trivial),
        ExplicitIrrep(S3_SIGN, sign),
        ExplicitIrrep(S3_STANDARD, standard),
    ]


def cyclic_irreps(p: FiniteGroupPresentation) -> list[ExplicitIrrep]:
    """Characters γ ↦ exp(2πi·kγ/n) of ℤ_n, labelled ``"k"``."""
    n = p.order
    return [
        ExplicitIrrep(
            str(k),
            {e: np.array([[np.exp(2j * np.pi * k * int(e) / n)]]) for e in p.elements},
        )
        for k in range(n)
    ]


def klein_irreps(p: Optional[FiniteGroupPresentation] = None) -> list[ExplicitIrrep]:
    """The four characters of V4; χ_x is +1 on {e, x} and −1 elsewhere."""
    p = p or klein_group()
    out = [ExplicitIrrep("t", {e: np.ones((1, 1)) for e in p.elements})]
    for x in ("a", "b", "c"):
        out.append(ExplicitIrrep(
            x, {e: np.array([[1.0 if e in ("e", x) else -1.0]]) for e in p.elements}
        ))
    return out


# ═══════════════════════════════════════════════════════════════════════════════
# Oracles
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class NormOracle:
    """L¹ and L∞ norms of an instance whose coefficient algebra is realized concretely."""

    l1_norm: Callable[[L1Element], float]
    linf_norm: Callable[[LinfElement], float]
    description: str = ""


def _operator_norm_oracle(
    realize: Callable[[np.ndarray], np.ndarray],
    blocks_of: Callable[[object], Mapping[str, np.ndarray]],
    order: int,
    description: str,
) -> NormOracle:
    """Norms from a faithful representation x ↦ M(x) on ℓ²(Γ) with φ = tr/|Γ|.

    ‖x·φ‖₁ = tr|M(x)|/|Γ| (sum of singular values) and ‖x‖∞ = ‖M(x)‖_op.
    """

    def l1(f: L1Element) -> float:
        require_space(f, L1Element, "l1_norm")
        m = realize(blocks_of(f))
        return float(np.linalg.norm(m, ord="nuc")) / order if m.size else 0.0

    def linf(x: LinfElement) -> float:
        require_space(x, LinfElement, "linf_norm")
        m = realize(blocks_of(x))
        return float(np.linalg.norm(m, ord=2)) if m.size else 0.0

    return NormOracle(l1, linf, description)


@dataclass(frozen=True, eq=False)
class BruteForceOracle:
    """Classical harmonic analysis on a finite group Γ.

    Elements x·φ of L¹ are functions x on Γ; the Haar state is the mean.
    Convolution is z(γ) = (1/|Γ|) Σ_s x(s) y(s⁻¹γ) and β₁ is class averaging,
    β₁(x)(γ) = (1/|Γ|) Σ_s x(sγs⁻¹).
    """

    group: FiniteGroupPresentation
    irreps: Mapping[str, np.ndarray] = field(repr=False)

    def to_function(self, f: L1Element | LinfElement) -> np.ndarray:
        """x(γ) = Σ c^α_{ij} u^α_{ij}(γ)."""
        x = np.zeros(self.group.order, dtype=complex)
        for a, block in f.blocks.items():
            x += np.einsum("ij,gij->g", block, self.irreps[a])
        return x

    def from_function(self, x: np.ndarray) -> L1Element:
        """c^α_{ij} = n_α · mean_γ x(γ)·conj(u^α_{ij}(γ))."""
        blocks = {}
        order = self.group.order
        for a, mats in self.irreps.items():
            n = mats.shape[1]
            blocks[a] = n * np.einsum("g,gij->ij", x, mats.conj()) / order
        return L1Element(blocks)

    def convolve_functions(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        table = self.group.table
        inv = self.group.inverse_indices
        order = self.group.order
        # y(s⁻¹γ) for every (s, γ)
        shifted = y[table[inv[:, np.newaxis], np.arange(order)[np.newaxis, :]]]
        return (x @ shifted) / order

    def class_average(self, x: np.ndarray) -> np.ndarray:
        table = self.group.table
        inv = self.group.inverse_indices
        order = self.group.order
        idx = np.arange(order)
        # s γ s⁻¹ for every (s, γ)
        conjugated = table[table[idx[:, np.newaxis], idx[np.newaxis, :]], inv[:, np.newaxis]]
        return x[conjugated].mean(axis=0)

    def convolve(self, f: L1Element, h: L1Element) -> L1Element:
        return self.from_function(self.convolve_functions(self.to_function(f), self.to_function(h)))

    def beta1(self, f: L1Element) -> L1Element:
        return self.from_function(self.class_average(self.to_function(f)))


# ═══════════════════════════════════════════════════════════════════════════════
# Finite-group instances
# ═══════════════════════════════════════════════════════════════════════════════

def finite_group_dual(p: FiniteGroupPresentation) -> QuantumGroupData:
    """The dual Γ̂: irreps = elements, dim 1, conjugate = inverse, N^c_{ab} = δ_{c,ab}.

    Raises
    ------
    InvalidGroupError
    """
    p.validate()
    irreps = {
        e: IrrepInfo(e, 1, (1.0,), p.inverse(e), (0,))
        for e in p.elements
    }
    entries = [
        FusionEntry(a, b, {p.multiply(a, b): 1}, True)
        for a in p.elements
        for b in p.elements
    ]
    logger.debug("built dual of %s with %d irreps", p.name, p.order)
    return QuantumGroupData(
        name=f"{DUAL_PREFIX}{p.name}",
        irreps=irreps,
        fusion=FusionTable.from_entries(entries),
        tolerance=DEFAULT_TOLERANCE,
        trivial=p.identity,
    )


def dual_norm_oracle(p: FiniteGroupPresentation) -> NormOracle:
    """Norms on Γ̂ through the left regular representation γ ↦ L_γ on ℓ²(Γ)."""
    order = p.order
    regular = np.zeros((order, order, order))
    idx = np.arange(order)
    for g_index in range(order):
        regular[g_index, p.table[g_index], idx] = 1.0

    def realize(blocks: Mapping[str, np.ndarray]) -> np.ndarray:
        m = np.zeros((order, order), dtype=complex)
        for label, block in blocks.items():
            m += complex(block[0, 0]) * regular[p.index(label)]
        return m

    return _operator_norm_oracle(
        realize, lambda x: x.blocks, order, f"left regular representation of {p.name}"
    )


def finite_group_function_algebra(
    p: FiniteGroupPresentation,
    irreps: Sequence[ExplicitIrrep],
    *,
    name: Optional[str] = None,
) -> tuple[QuantumGroupData, NormOracle, BruteForceOracle]:
    """C(Γ) with the given explicit irreps.

    The irreps must form a complete set of pairwise-inequivalent unitary
    representations (Σ n_α² = |Γ|).  Fusion multiplicities are computed as
    N^γ_{αβ} = ⟨χ_α χ_β, χ_γ⟩.

    Raises
    ------
    InvalidGroupError
    NonUnitaryIrrepError
    IncompleteIrrepSetError
    """
    p.validate()
    for pi in irreps:
        pi.validate(p)

    labels = [pi.label for pi in irreps]
    if len(set(labels)) != len(labels):
        raise IncompleteIrrepSetError("duplicate irrep labels")
    order = p.order
    if sum(pi.dim ** 2 for pi in irreps) != order:
        raise IncompleteIrrepSetError(
            f"Σ n_α² = {sum(pi.dim ** 2 for pi in irreps)} but |{p.name}| = {order}"
        )

    chars = {pi.label: pi.character(p) for pi in irreps}

    def pairing(x: np.ndarray, y: np.ndarray) -> complex:
        return complex(np.vdot(y, x) / order)

    for a in labels:
        for b in labels:
            expected = 1.0 if a == b else 0.0
            if abs(pairing(chars[a], chars[b]) - expected) > CHARACTER_ROUNDING_TOLERANCE:
                raise IncompleteIrrepSetError(f"irreps {a!r} and {b!r} fail character orthogonality")

    trivial = next(
        (a for a in labels if np.allclose(chars[a], 1.0, atol=CHARACTER_ROUNDING_TOLERANCE)),
        None,
    )
    if trivial is None:
        raise IncompleteIrrepSetError("no trivial irrep among the given irreps")

    def conjugate_of(a: str) -> str:
        target = chars[a].conj()
        for b in labels:
            if np.allclose(chars[b], target, atol=CHARACTER_ROUNDING_TOLERANCE):
                return b
        raise IncompleteIrrepSetError(f"no conjugate irrep for {a!r}")

    infos = {
        pi.label: IrrepInfo(
            pi.label, pi.dim, (1.0,) * pi.dim, conjugate_of(pi.label), tuple(range(pi.dim))
        )
        for pi in irreps
    }

    entries = []
    for a in labels:
        for b in labels:
            product = chars[a] * chars[b]
            decomp = {}
            for c in labels:
                m = pairing(product, chars[c])
                k = int(round(m.real))
                if abs(m - k) > CHARACTER_ROUNDING_TOLERANCE:
                    raise IncompleteIrrepSetError(
                        f"non-integral multiplicity {m:.6g} of {c!r} in {a}⊗{b}"
                    )
                if k:
                    decomp[c] = k
            entries.append(FusionEntry(a, b, decomp, True))

    data = QuantumGroupData(
        name=name or f"{FUNCTION_PREFIX}{p.name}",
        irreps=infos,
        fusion=FusionTable.from_entries(entries),
        tolerance=DEFAULT_TOLERANCE,
        trivial=trivial,
    )

    stacked = {pi.label: pi.stacked(p) for pi in irreps}
    brute = BruteForceOracle(p, stacked)

    def realize(blocks: Mapping[str, np.ndarray]) -> np.ndarray:
        x = np.zeros(order, dtype=complex)
        for a, block in blocks.items():
            x += np.einsum("ij,gij->g", block, stacked[a])
        return np.diag(x)

    norms = _operator_norm_oracle(
        realize, lambda x: x.blocks, order, f"functions on {p.name}"
    )
    logger.debug("built function algebra of %s: irreps %s", p.name, labels)
    return data, norms, brute


# ═══════════════════════════════════════════════════════════════════════════════
# SU_q(2) and O_N⁺
# ═══════════════════════════════════════════════════════════════════════════════

def _chebyshev_fusion(level: int) -> FusionTable:
    """N^c_{ab} = 1 iff |a−b| ≤ c ≤ a+b, a+b+c even; a+b > L is incomplete."""
    entries = []
    for a in range(level + 1):
        for b in range(level + 1):
            decomp = {
                str(c): 1
                for c in range(abs(a - b), a + b + 1, 2)
                if c <= level
            }
            entries.append(FusionEntry(str(a), str(b), decomp, a + b <= level))
    return FusionTable.from_entries(entries)


def _check_level(level: int) -> None:
    if not isinstance(level, int) or isinstance(level, bool) or level < 0:
        raise InvalidParameterError(f"level must be a non-negative integer, got {level!r}")


def q_number(k: int, q: float) -> float:
    """[k]_q = (q^k − q^{−k})/(q − q^{−1}); equals k at q = 1."""
    if q == 1.0:
        return float(k)
    return (q ** k - q ** (-k)) / (q - 1.0 / q)


def suq2_truncated(q: float = DEFAULT_Q, level: int = DEFAULT_LEVEL) -> QuantumGroupData:
    """SU_q(2) with irreps 0 … L.

    Irrep k has dimension k+1 and F-eigenvalues (q^{−k}, q^{−k+2}, …, q^{k});
    every irrep is self-conjugate with σ the index reversal.

    Raises
    ------
    InvalidParameterError
        q ∉ (0, 1] or L is not a non-negative integer.
    """
    if not (isinstance(q, (int, float)) and math.isfinite(q) and 0.0 < q <= 1.0):
        raise InvalidParameterError(f"q must lie in (0, 1], got {q!r}")
    _check_level(level)
    q = float(q)

    irreps = {}
    for k in range(level + 1):
        eigenvalues = tuple(q ** (2 * j - k) for j in range(k + 1))
        irreps[str(k)] = IrrepInfo(
            str(k), k + 1, eigenvalues, str(k), tuple(range(k, -1, -1))
        )
    logger.debug("built SU_q(2) q=%g up to level %d", q, level)
    return QuantumGroupData(
        name=f"{BUILTIN_SUQ2}(q={q:g},L={level})",
        irreps=irreps,
        fusion=_chebyshev_fusion(level),
        tolerance=DEFAULT_TOLERANCE,
        trivial="0",
    )


def on_plus_dims(n: int, level: int) -> list[int]:
    """n₀ = 1, n₁ = N, n_{k+1} = N·n_k − n_{k−1}."""
    dims = [1, n]
    while len(dims) < level + 1:
        dims.append(n * dims[-1] - dims[-2])
    return dims[: level + 1]


def on_plus_truncated(n: int = DEFAULT_ONPLUS_N, level: int = DEFAULT_ONPLUS_LEVEL) -> QuantumGroupData:
    """The free orthogonal quantum group O_N⁺ with irreps 0 … L (Kac, self-conjugate).

    Raises
    ------
    InvalidParameterError
        N < 2 or L is not a non-negative integer.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidParameterError(f"N must be an integer ≥ 2, got {n!r}")
    _check_level(level)
    irreps = {
        str(k): IrrepInfo(str(k), d, (1.0,) * d, str(k), tuple(range(d)))
        for k, d in enumerate(on_plus_dims(n, level))
    }
    logger.debug("built O_%d+ up to level %d", n, level)
    return QuantumGroupData(
        name=f"{BUILTIN_ONPLUS}(N={n},L={level})",
        irreps=irreps,
        fusion=_chebyshev_fusion(level),
        tolerance=DEFAULT_TOLERANCE,
        trivial="0",
    )


# ═══════════════════════════════════════════════════════════════════════════════
# Selector resolution
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class InstanceBundle:
    """An instance with whatever oracles it supports."""

    data: QuantumGroupData
    norm_oracle: Optional[NormOracle] = None
    brute_force: Optional[BruteForceOracle] = None


_CYCLIC = re.compile(rf"^{CYCLIC_PREFIX}(\d+)$")


def group_by_token(token: str) -> tuple[FiniteGroupPresentation, Callable[[FiniteGroupPresentation], list[ExplicitIrrep]]]:
    """Group presentation and its irrep factory for ``s3``, ``v4`` or ``z<n>``."""
    token = token.lower()
    if token == GROUP_S3:
        return symmetric_group_s3(), s3_irreps
    if token == GROUP_KLEIN:
        return klein_group(), klein_irreps
    m = _CYCLIC.match(token)
    if m:
        return cyclic_group(int(m.group(1))), cyclic_irreps
    raise UnknownInstanceError(f"unknown group {token!r} (expected s3, v4 or z<n>)")


def resolve_instance(
    selector: str,
    *,
    q: float = DEFAULT_Q,
    level: Optional[int] = None,
    n: int = DEFAULT_ONPLUS_N,
    validate: bool = True,
) -> InstanceBundle:
    """Turn a CLI selector into an instance.

    Accepted selectors: ``s3`` (= ``fun:s3``), ``fun:<group>``,
    ``dual:<group>``, ``suq2``, ``onplus``, or a path to a JSON instance file.
    ``<group>`` is ``s3``, ``v4`` or ``z<n>``.  ``level`` defaults per family.

    Raises
    ------
    UnknownInstanceError
    FileNotFoundError
    InvalidParameterError
    """
    key = selector.strip().lower()

    if key == BUILTIN_S3:
        key = FUNCTION_PREFIX + GROUP_S3
    if key.startswith(FUNCTION_PREFIX):
        group, factory = group_by_token(key[len(FUNCTION_PREFIX):])
        data, norms, brute = finite_group_function_algebra(group, factory(group))
        return InstanceBundle(data, norms, brute)
    if key.startswith(DUAL_PREFIX):
        group, _ = group_by_token(key[len(DUAL_PREFIX):])
        return InstanceBundle(finite_group_dual(group), dual_norm_oracle(group))
    if key == BUILTIN_SUQ2:
        return InstanceBundle(suq2_truncated(q, DEFAULT_LEVEL if level is None else level))
    if key == BUILTIN_ONPLUS:
        return InstanceBundle(on_plus_truncated(n, DEFAULT_ONPLUS_LEVEL if level is None else level))

    path = Path(selector)
    if path.suffix.lower() == ".json" or path.exists():
        from cqg.io.readers import load_instance

        return InstanceBundle(load_instance(path, validate=validate))
    raise UnknownInstanceError(f"{selector!r} is neither a built-in instance nor a file")
