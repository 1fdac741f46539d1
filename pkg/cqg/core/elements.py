"""
Block-sparse elements of the truncated coefficient spaces.

All three coefficient spaces share one representation: a map from irrep label
to a dense complex n_α×n_α block, entry ``(i, j)`` being the coefficient of
the basis element indexed by (α, i, j).  Missing blocks are zero.

    - :class:`L1Element`  — coefficients against φ^α_{ij} = u^α_{ij}·φ
    - :class:`L2Vector`   — coefficients against Λ(u^α_{ij})
    - :class:`LinfElement` — coefficients against u^α_{ij} itself

The space tag travels with the type; arithmetic across spaces raises
:class:`~cqg.core.errors.SpaceMismatchError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar, Iterable, Iterator, Mapping, Optional, TypeVar

import numpy as np

from cqg.config.constants import SPACE_L1, SPACE_L2, SPACE_LINF
from cqg.core.errors import ElementFormatError, SpaceMismatchError
from cqg.core.fusion_data import QuantumGroupData

E = TypeVar("E", bound="BlockElement")

Term = tuple[str, int, int, complex]


def basis_order(g: QuantumGroupData) -> list[tuple[str, int, int]]:
    """Fixed enumeration (α, i, j) of the window basis: labels in instance order, row-major."""
    return [
        (a, i, j)
        for a, info in g.irreps.items()
        for i in range(info.dim)
        for j in range(info.dim)
    ]


@dataclass(eq=False)
class BlockElement:
    """Common block representation; use one of the concrete subclasses."""

    space: ClassVar[str] = ""

    blocks: dict[str, np.ndarray] = field(default_factory=dict)

    # ── Constructors ────────────────────────────────────────────────────────

    @classmethod
    def zero(cls: type[E]) -> E:
        return cls({})

    @classmethod
    def from_terms(cls: type[E], g: QuantumGroupData, terms: Iterable[Term]) -> E:
        """Sum of ``c·basis(α, i, j)`` over ``(α, i, j, c)``.

        Raises
        ------
        UnknownIrrepError
        ElementFormatError
            An index lies outside the irrep dimension.
        """
        blocks: dict[str, np.ndarray] = {}
        for label, i, j, c in terms:
            n = g.info(label).dim
            if not (0 <= i < n and 0 <= j < n):
                raise ElementFormatError(
                    f"index ({i}, {j}) out of range for irrep {label!r} of dim {n}"
                )
            if label not in blocks:
                blocks[label] = np.zeros((n, n), dtype=complex)
            blocks[label][i, j] += c
        return cls(blocks)

    @classmethod
    def basis(cls: type[E], g: QuantumGroupData, label: str, i: int, j: int) -> E:
        return cls.from_terms(g, [(label, i, j, 1.0)])

    @classmethod
    def character(cls: type[E], g: QuantumGroupData, label: str) -> E:
        """Σ_i of the diagonal basis elements of α (χ^α, φ^α or Λχ^α)."""
        n = g.info(label).dim
        return cls({label: np.eye(n, dtype=complex)})

    @classmethod
    def quantum_character(cls: type[E], g: QuantumGroupData, label: str) -> E:
        """Σ_i λ^α_i times the diagonal basis elements of α."""
        lam = g.info(label).eigenvalues
        return cls({label: np.diag(lam).astype(complex)})

    @classmethod
    def random(cls: type[E], g: QuantumGroupData, rng: np.random.Generator) -> E:
        """Coefficients uniform in the complex unit square over the whole window."""
        blocks = {}
        for a, info in g.irreps.items():
            n = info.dim
            blocks[a] = rng.random((n, n)) + 1j * rng.random((n, n))
        return cls(blocks)

    @classmethod
    def from_flat(cls: type[E], g: QuantumGroupData, vector: np.ndarray) -> E:
        """Inverse of :meth:`flatten`."""
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (g.basis_size,):
            raise ElementFormatError(
                f"expected a vector of length {g.basis_size}, got shape {vector.shape}"
            )
        blocks = {}
        offset = 0
        for a, info in g.irreps.items():
            n = info.dim
            blocks[a] = vector[offset:offset + n * n].reshape(n, n).copy()
            offset += n * n
        return cls(blocks)

    # ── Access ──────────────────────────────────────────────────────────────

    def block(self, g: QuantumGroupData, label: str) -> np.ndarray:
        """Dense block of α (zeros when absent)."""
        b = self.blocks.get(label)
        if b is not None:
            return b
        n = g.info(label).dim
        return np.zeros((n, n), dtype=complex)

    def coefficient(self, label: str, i: int, j: int) -> complex:
        b = self.blocks.get(label)
        return complex(b[i, j]) if b is not None else 0j

    def terms(self, tol: float = 0.0) -> Iterator[Term]:
        """Nonzero ``(α, i, j, c)`` with |c| > tol, in block order."""
        for label, b in self.blocks.items():
            for i, j in zip(*np.nonzero(np.abs(b) > tol)):
                yield label, int(i), int(j), complex(b[i, j])

    def support(self) -> list[str]:
        return [a for a, b in self.blocks.items() if np.any(b != 0)]

    def flatten(self, g: QuantumGroupData) -> np.ndarray:
        """Coefficient vector in :func:`basis_order`."""
        if not g.irreps:
            return np.zeros(0, dtype=complex)
        return np.concatenate([self.block(g, a).ravel() for a in g.irreps])

    def norm_max(self) -> float:
        return max((float(np.abs(b).max()) for b in self.blocks.values() if b.size), default=0.0)

    def is_zero(self, tol: float) -> bool:
        return self.norm_max() <= tol

    # ── Arithmetic ──────────────────────────────────────────────────────────

    def _require_same(self, other: object) -> None:
        if not isinstance(other, BlockElement):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatchError(f"{self.space} element combined with {other.space} element")

    def _combine(self: E, other: E, sign: float) -> E:
        self._require_same(other)
        blocks = {a: b.copy() for a, b in self.blocks.items()}
        for a, b in other.blocks.items():
            if a in blocks:
                blocks[a] = blocks[a] + sign * b
            else:
                blocks[a] = sign * b
        return type(self)(blocks)

    def __add__(self: E, other: E) -> E:
        return self._combine(other, 1.0)

    def __sub__(self: E, other: E) -> E:
        return self._combine(other, -1.0)

    def __neg__(self: E) -> E:
        return self * -1.0

    def __mul__(self: E, c: complex) -> E:
        if not isinstance(c, (int, float, complex, np.number)):
            return NotImplemented
        return type(self)({a: c * b for a, b in self.blocks.items()})

    __rmul__ = __mul__

    def residual(self, other: "BlockElement") -> float:
        """max |coefficient difference| over the union of supports."""
        self._require_same(other)
        labels = set(self.blocks) | set(other.blocks)
        worst = 0.0
        for a in labels:
            mine = self.blocks.get(a)
            theirs = other.blocks.get(a)
            if mine is None:
                diff = theirs
            elif theirs is None:
                diff = mine
            else:
                diff = mine - theirs
            if diff.size:
                worst = max(worst, float(np.abs(diff).max()))
        return worst

    def restricted_to(self: E, labels: Iterable[str]) -> E:
        """Copy keeping only the given blocks."""
        keep = set(labels)
        return type(self)({a: b.copy() for a, b in self.blocks.items() if a in keep})

    def __repr__(self) -> str:
        terms = ", ".join(f"{c:.4g}·[{a}]{i}{j}" for a, i, j, c in self.terms(1e-15))
        return f"{type(self).__name__}({terms or '0'})"


class L1Element(BlockElement):
    """Element of L¹(𝔾) in the basis φ^α_{ij}."""

    space = SPACE_L1


class L2Vector(BlockElement):
    """Vector of L²(𝔾) in the (non-normalized) basis Λ(u^α_{ij})."""

    space = SPACE_L2


class LinfElement(BlockElement):
    """Coefficient combination Σ c·u^α_{ij} in L∞(𝔾)."""

    space = SPACE_LINF


SPACES: Mapping[str, type[BlockElement]] = {
    SPACE_L1: L1Element,
    SPACE_L2: L2Vector,
    SPACE_LINF: LinfElement,
}


def element_class(space: str) -> type[BlockElement]:
    try:
        return SPACES[space]
    except KeyError:
        raise ElementFormatError(f"unknown element space {space!r}") from None


def require_space(x: BlockElement, cls: type[BlockElement], what: Optional[str] = None) -> None:
    """Raise SpaceMismatchError unless ``x`` lives in ``cls``'s space."""
    if x.space != cls.space:
        op = f" for {what}" if what else ""
        raise SpaceMismatchError(f"expected an {cls.space} element{op}, got {x.space}")
