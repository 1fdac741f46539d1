"""
Fusion data of a truncated compact quantum group.

An instance carries, for every irrep label α in its truncation window, the
dimension n_α, the eigenvalues λ^α_1 … λ^α_{n_α} of the diagonal F-matrix,
the conjugate label ᾱ with an index bijection σ_α aligning the two bases,
and the fusion multiplicities N^γ_{αβ}.  The listed eigenvalue order *is*
the basis order used for matrix indices everywhere in the toolbox; indices
are 0-based.

``validate`` never raises: every violated invariant becomes a failed
:class:`~cqg.io.reporters.CheckRecord` naming the offending labels.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

import numpy as np
import pandas as pd

from cqg.config.constants import (
    DEFAULT_TOLERANCE,
    FUSION_VALIDATION_CHECKS,
    STATUS_FAIL,
    STATUS_PASS,
    STRUCTURAL_VALIDATION_CHECKS,
)
from cqg.core.errors import TruncationOverflow, UnknownIrrepError
from cqg.io.reporters import CheckRecord, VerificationReport

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════════════════
# Domain types
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class IrrepInfo:
    """Numeric data of one irreducible corepresentation u^α."""

    label: str
    dim: int
    f_eigenvalues: tuple[float, ...]
    conjugate: str
    conj_index_map: tuple[int, ...]

    @property
    def quantum_dimension(self) -> float:
        """d_α = tr(F^α) = Σ_i λ^α_i."""
        return float(sum(self.f_eigenvalues))

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return np.asarray(self.f_eigenvalues, dtype=float)


@dataclass(frozen=True)
class FusionEntry:
    """Decomposition of α ⊗ β inside the window.

    ``complete`` is ``False`` when part of the product lies beyond the
    truncation window, in which case ``decomp`` lists only the in-window part.
    """

    a: str
    b: str
    decomp: Mapping[str, int]
    complete: bool = True


@dataclass(frozen=True)
class FusionTable:
    """All known fusion entries keyed by ``(α, β)``."""

    entries: Mapping[tuple[str, str], FusionEntry] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, entries: Iterable[FusionEntry]) -> "FusionTable":
        return cls({(e.a, e.b): e for e in entries})

    def get(self, a: str, b: str) -> Optional[FusionEntry]:
        return self.entries.get((a, b))

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class QuantumGroupData:
    """A truncated compact quantum group.

    Treated as immutable after construction; every operation of the toolbox
    is a pure function of it.  The trivial irrep is ``trivial`` when given,
    otherwise the first label listed.
    """

    name: str
    irreps: Mapping[str, IrrepInfo]
    fusion: FusionTable = field(default_factory=FusionTable)
    tolerance: float = DEFAULT_TOLERANCE
    trivial: str = ""

    def __post_init__(self) -> None:
        if not self.trivial and self.irreps:
            object.__setattr__(self, "trivial", next(iter(self.irreps)))

    @property
    def labels(self) -> list[str]:
        return list(self.irreps)

    def info(self, label: str) -> IrrepInfo:
        try:
            return self.irreps[label]
        except KeyError:
            raise UnknownIrrepError(label, self.name) from None

    def __contains__(self, label: object) -> bool:
        return label in self.irreps

    @property
    def is_kac(self) -> bool:
        """Every F-eigenvalue equals 1 (the Haar state is tracial)."""
        return self.kac_within(self.tolerance)

    def kac_within(self, tol: float) -> bool:
        """Every F-eigenvalue lies within ``tol`` of 1."""
        return all(
            abs(lam - 1.0) <= tol
            for info in self.irreps.values()
            for lam in info.f_eigenvalues
        )

    @property
    def basis_size(self) -> int:
        """Σ_α n_α², the dimension of the truncated coefficient space."""
        return sum(info.dim ** 2 for info in self.irreps.values())


@dataclass(frozen=True)
class CharacterRingElement:
    """Finite combination Σ c_α χ^α in the character ring.

    ``lossy`` marks results of lossy fusion that dropped out-of-window terms.
    """

    coeffs: Mapping[str, complex] = field(default_factory=dict)
    lossy: bool = False

    def __add__(self, other: "CharacterRingElement") -> "CharacterRingElement":
        out = dict(self.coeffs)
        for label, c in other.coeffs.items():
            out[label] = out.get(label, 0.0) + c
        return CharacterRingElement(out, self.lossy or other.lossy)

    def __sub__(self, other: "CharacterRingElement") -> "CharacterRingElement":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "CharacterRingElement":
        return CharacterRingElement(
            {label: c * v for label, v in self.coeffs.items()}, self.lossy
        )

    def coefficient(self, label: str) -> complex:
        return complex(self.coeffs.get(label, 0.0))

    def support(self) -> list[str]:
        return [label for label, c in self.coeffs.items() if c != 0]

    def residual(self, other: "CharacterRingElement") -> float:
        """max_α |c_α − c'_α|."""
        labels = set(self.coeffs) | set(other.coeffs)
        if not labels:
            return 0.0
        return max(abs(self.coefficient(a) - other.coefficient(a)) for a in labels)


def character(g: QuantumGroupData, label: str) -> CharacterRingElement:
    """χ^α as a character-ring element."""
    g.info(label)
    return CharacterRingElement({label: 1.0 + 0j})


# ═══════════════════════════════════════════════════════════════════════════════
# Operations
# ═══════════════════════════════════════════════════════════════════════════════

def quantum_dimension(g: QuantumGroupData, label: str) -> float:
    """d_α = Σ_i λ^α_i.

    Raises
    ------
    UnknownIrrepError
    """
    return g.info(label).quantum_dimension


def fuse_characters(
    g: QuantumGroupData,
    x: CharacterRingElement,
    y: CharacterRingElement,
    *,
    lossy: bool = False,
) -> CharacterRingElement:
    """Bilinear extension of χ^α·χ^β = Σ_γ N^γ_{αβ} χ^γ.

    Parameters
    ----------
    g : QuantumGroupData
    x, y : CharacterRingElement
    lossy : bool
        Drop the out-of-window part of incomplete products instead of
        failing; the result is then flagged ``lossy``.

    Raises
    ------
    TruncationOverflow
        A needed product is incomplete or absent and ``lossy`` is off.
    UnknownIrrepError
    """
    out: dict[str, complex] = {}
    flagged = x.lossy or y.lossy

    for a, ca in x.coeffs.items():
        if ca == 0:
            continue
        g.info(a)
        for b, cb in y.coeffs.items():
            if cb == 0:
                continue
            g.info(b)
            decomp, complete = _product(g, a, b)
            if not complete:
                if not lossy:
                    raise TruncationOverflow(
                        a, b, "incomplete" if decomp is not None else "no entry"
                    )
                flagged = True
                logger.debug("lossy fusion dropped part of %s ⊗ %s", a, b)
            for c, mult in (decomp or {}).items():
                if mult:
                    out[c] = out.get(c, 0.0) + ca * cb * mult

    return CharacterRingElement(out, flagged)


def _product(
    g: QuantumGroupData, a: str, b: str
) -> tuple[Optional[Mapping[str, int]], bool]:
    """(decomp, complete) for α ⊗ β, falling back to the unit rule."""
    entry = g.fusion.get(a, b)
    if entry is not None:
        return entry.decomp, entry.complete
    if a == g.trivial:
        return {b: 1}, True
    if b == g.trivial:
        return {a: 1}, True
    return None, False


def conjugate_character(
    g: QuantumGroupData, x: CharacterRingElement
) -> CharacterRingElement:
    """Conjugate-linear map χ^α ↦ χ^ᾱ."""
    out: dict[str, complex] = {}
    for label, c in x.coeffs.items():
        bar = g.info(label).conjugate
        out[bar] = out.get(bar, 0.0) + complex(c).conjugate()
    return CharacterRingElement(out, x.lossy)


# ═══════════════════════════════════════════════════════════════════════════════
# Validation — structural invariants
# ═══════════════════════════════════════════════════════════════════════════════
#
# Every check returns (offending rows, worst residual).  Rows become the
# record's details table; the first row is the witness.

Rows = list[dict]


def _check_tolerance(g: QuantumGroupData) -> tuple[Rows, float]:
    tol = g.tolerance
    if isinstance(tol, (int, float)) and math.isfinite(tol) and tol > 0:
        return [], 0.0
    return [{"label": "", "problem": f"tolerance {tol!r} is not a positive real"}], 0.0


def _check_nonempty(g: QuantumGroupData) -> tuple[Rows, float]:
    if g.irreps:
        return [], 0.0
    return [{"label": "", "problem": "instance has no irreps"}], 0.0


def _check_trivial(g: QuantumGroupData) -> tuple[Rows, float]:
    if not g.irreps:
        return [], 0.0
    t = g.trivial
    if t not in g.irreps:
        return [{"label": t, "problem": "trivial label not among the irreps"}], 0.0
    info = g.irreps[t]
    rows: Rows = []
    worst = 0.0
    if info.dim != 1:
        rows.append({"label": t, "problem": f"trivial irrep has dim {info.dim}"})
    if len(info.f_eigenvalues) == 1:
        worst = abs(info.f_eigenvalues[0] - 1.0)
        if worst > g.tolerance:
            rows.append({"label": t, "problem": f"eigenvalues {list(info.f_eigenvalues)} ≠ [1]"})
    else:
        rows.append({"label": t, "problem": f"eigenvalues {list(info.f_eigenvalues)} ≠ [1]"})
    if info.conjugate != t:
        rows.append({"label": t, "problem": f"trivial irrep conjugate is {info.conjugate!r}"})
    return rows, worst


def _check_dim(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = [
        {"label": a, "problem": f"dim {info.dim!r} is not a positive integer"}
        for a, info in g.irreps.items()
        if not (isinstance(info.dim, int) and not isinstance(info.dim, bool) and info.dim > 0)
    ]
    return rows, 0.0


def _check_eigenvalue_count(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = [
        {"label": a, "problem": f"{len(info.f_eigenvalues)} eigenvalues for dim {info.dim}"}
        for a, info in g.irreps.items()
        if len(info.f_eigenvalues) != info.dim
    ]
    return rows, 0.0


def _check_eigenvalue_positivity(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = []
    for a, info in g.irreps.items():
        bad = [lam for lam in info.f_eigenvalues if not (math.isfinite(lam) and lam > 0)]
        if bad:
            rows.append({"label": a, "problem": f"non-positive eigenvalues {bad}"})
    return rows, 0.0


def _positive(info: IrrepInfo) -> bool:
    return (
        len(info.f_eigenvalues) == info.dim
        and all(math.isfinite(lam) and lam > 0 for lam in info.f_eigenvalues)
    )


def _check_trace_balance(g: QuantumGroupData) -> tuple[Rows, float]:
    rows: Rows = []
    worst = 0.0
    for a, info in g.irreps.items():
        if not _positive(info):
            continue
        lam = info.eigenvalues
        residual = abs(float(lam.sum() - (1.0 / lam).sum()))
        worst = max(worst, residual)
        if residual > g.tolerance:
            rows.append({"label": a, "problem": "Σλ ≠ Σ1/λ", "residual": residual})
    return rows, worst


def _check_conjugate_label(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = [
        {"label": a, "problem": f"conjugate {info.conjugate!r} is not an irrep label"}
        for a, info in g.irreps.items()
        if info.conjugate not in g.irreps
    ]
    return rows, 0.0


def _check_conjugate_dim(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = []
    for a, info in g.irreps.items():
        bar = g.irreps.get(info.conjugate)
        if bar is not None and bar.dim != info.dim:
            rows.append({
                "label": a,
                "problem": f"dim {info.dim} but conjugate {bar.label!r} has dim {bar.dim}",
            })
    return rows, 0.0


def _is_permutation(sigma: tuple[int, ...], n: int) -> bool:
    return (
        len(sigma) == n
        and all(isinstance(s, int) and not isinstance(s, bool) for s in sigma)
        and sorted(sigma) == list(range(n))
    )


def _check_conj_index_map(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = [
        {"label": a, "problem": f"conj_index_map {list(info.conj_index_map)} is not a bijection of 0..{info.dim - 1}"}
        for a, info in g.irreps.items()
        if not _is_permutation(tuple(info.conj_index_map), info.dim)
    ]
    return rows, 0.0


def _conjugation_usable(g: QuantumGroupData, info: IrrepInfo) -> Optional[IrrepInfo]:
    """The conjugate's info when both sides are numerically usable."""
    bar = g.irreps.get(info.conjugate)
    if bar is None or bar.dim != info.dim:
        return None
    if not (_positive(info) and _positive(bar)):
        return None
    if not _is_permutation(tuple(info.conj_index_map), info.dim):
        return None
    return bar


def _check_conjugate_eigenvalues(g: QuantumGroupData) -> tuple[Rows, float]:
    rows: Rows = []
    worst = 0.0
    for a, info in g.irreps.items():
        bar = _conjugation_usable(g, info)
        if bar is None:
            continue
        for i, s in enumerate(info.conj_index_map):
            residual = abs(bar.f_eigenvalues[s] * info.f_eigenvalues[i] - 1.0)
            worst = max(worst, residual)
            if residual > g.tolerance:
                rows.append({
                    "label": a,
                    "problem": f"λ^{bar.label}_{s} · λ^{a}_{i} ≠ 1",
                    "residual": residual,
                })
    return rows, worst


def _check_conjugation_involution(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = []
    for a, info in g.irreps.items():
        bar = g.irreps.get(info.conjugate)
        if bar is None:
            continue
        if bar.conjugate != a:
            rows.append({"label": a, "problem": f"conjugate of {bar.label!r} is {bar.conjugate!r}"})
            continue
        if not (
            _is_permutation(tuple(info.conj_index_map), info.dim)
            and _is_permutation(tuple(bar.conj_index_map), bar.dim)
            and bar.dim == info.dim
        ):
            continue
        if any(bar.conj_index_map[info.conj_index_map[i]] != i for i in range(info.dim)):
            rows.append({"label": a, "problem": f"σ_{bar.label} ∘ σ_{a} is not the identity"})
    return rows, 0.0


_STRUCTURAL = {
    "validate.tolerance": _check_tolerance,
    "validate.nonempty": _check_nonempty,
    "validate.trivial": _check_trivial,
    "validate.dim": _check_dim,
    "validate.eigenvalue_count": _check_eigenvalue_count,
    "validate.eigenvalue_positivity": _check_eigenvalue_positivity,
    "validate.trace_balance": _check_trace_balance,
    "validate.conjugate_label": _check_conjugate_label,
    "validate.conjugate_dim": _check_conjugate_dim,
    "validate.conj_index_map": _check_conj_index_map,
    "validate.conjugate_eigenvalues": _check_conjugate_eigenvalues,
    "validate.conjugation_involution": _check_conjugation_involution,
}


# ═══════════════════════════════════════════════════════════════════════════════
# Validation — fusion table
# ═══════════════════════════════════════════════════════════════════════════════

def _valid_mult(m: object) -> bool:
    return isinstance(m, int) and not isinstance(m, bool) and m >= 0


def _usable_entries(g: QuantumGroupData) -> dict[tuple[str, str], FusionEntry]:
    """Entries whose labels are known and multiplicities well-formed."""
    return {
        key: e
        for key, e in g.fusion.entries.items()
        if e.a in g.irreps
        and e.b in g.irreps
        and all(c in g.irreps and _valid_mult(m) for c, m in e.decomp.items())
    }


def _check_fusion_labels(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = []
    for e in g.fusion:
        unknown = [lab for lab in (e.a, e.b, *e.decomp) if lab not in g.irreps]
        if unknown:
            rows.append({"entry": f"{e.a}⊗{e.b}", "problem": f"unknown labels {sorted(set(unknown))}"})
    return rows, 0.0


def _check_fusion_multiplicities(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = []
    for e in g.fusion:
        bad = {c: m for c, m in e.decomp.items() if not _valid_mult(m)}
        if bad:
            rows.append({"entry": f"{e.a}⊗{e.b}", "problem": f"invalid multiplicities {bad}"})
    return rows, 0.0


def _nonzero(decomp: Mapping[str, int]) -> dict[str, int]:
    return {c: m for c, m in decomp.items() if m}


def _check_fusion_unit(g: QuantumGroupData) -> tuple[Rows, float]:
    rows = []
    t = g.trivial
    for (a, b), e in _usable_entries(g).items():
        if t not in (a, b):
            continue
        other = b if a == t else a
        if _nonzero(e.decomp) != {other: 1} or not e.complete:
            rows.append({
                "entry": f"{a}⊗{b}",
                "problem": f"expected {{{other}: 1}}, got {dict(e.decomp)} (complete={e.complete})",
            })
    return rows, 0.0


def fusion_dimension_residuals(
    g: QuantumGroupData, *, quantum: bool
) -> list[tuple[str, str, float]]:
    """(α, β, |x_α x_β − Σ_γ N^γ_{αβ} x_γ|) on every complete entry.

    ``x`` is the integer dimension, or the quantum dimension when ``quantum``.
    """
    def size(label: str) -> float:
        info = g.irreps[label]
        return info.quantum_dimension if quantum else float(info.dim)

    out = []
    for (a, b), e in _usable_entries(g).items():
        if not e.complete:
            continue
        rhs = sum(m * size(c) for c, m in e.decomp.items())
        out.append((a, b, abs(size(a) * size(b) - rhs)))
    return out


def _dimension_check(g: QuantumGroupData, *, quantum: bool) -> tuple[Rows, float]:
    residuals = fusion_dimension_residuals(g, quantum=quantum)
    worst = max((r for _, _, r in residuals), default=0.0)
    symbol = "d" if quantum else "n"
    rows = [
        {"entry": f"{a}⊗{b}", "problem": f"{symbol}_{a}{symbol}_{b} ≠ ΣN{symbol}", "residual": r}
        for a, b, r in residuals
        if r > g.tolerance
    ]
    return rows, worst


def fusion_associativity_residuals(
    g: QuantumGroupData,
) -> list[tuple[str, str, str, str, float]]:
    """(α, β, γ, δ, residual) on every triple whose products are all complete.

    Compares Σ_e N^e_{αβ} N^δ_{eγ} with Σ_f N^f_{βγ} N^δ_{αf}.
    """
    entries = _usable_entries(g)

    def complete(a: str, b: str) -> Optional[Mapping[str, int]]:
        e = entries.get((a, b))
        return e.decomp if e is not None and e.complete else None

    out = []
    labels = g.labels
    for a in labels:
        for b in labels:
            ab = complete(a, b)
            if ab is None:
                continue
            for c in labels:
                bc = complete(b, c)
                if bc is None:
                    continue
                left_parts = [(m, complete(e, c)) for e, m in ab.items() if m]
                right_parts = [(m, complete(a, f)) for f, m in bc.items() if m]
                if any(d is None for _, d in left_parts + right_parts):
                    continue
                lhs: dict[str, int] = {}
                for m, d in left_parts:
                    for delta, k in d.items():
                        lhs[delta] = lhs.get(delta, 0) + m * k
                rhs: dict[str, int] = {}
                for m, d in right_parts:
                    for delta, k in d.items():
                        rhs[delta] = rhs.get(delta, 0) + m * k
                for delta in sorted(set(lhs) | set(rhs)):
                    out.append((a, b, c, delta, float(abs(lhs.get(delta, 0) - rhs.get(delta, 0)))))
    return out


def _check_associativity(g: QuantumGroupData) -> tuple[Rows, float]:
    residuals = fusion_associativity_residuals(g)
    worst = max((r for *_, r in residuals), default=0.0)
    rows = [
        {"entry": f"({a}⊗{b})⊗{c}", "problem": f"multiplicity of {d} differs", "residual": r}
        for a, b, c, d, r in residuals
        if r > g.tolerance
    ]
    return rows, worst


_FUSION = {
    "validate.fusion_labels": _check_fusion_labels,
    "validate.fusion_multiplicities": _check_fusion_multiplicities,
    "validate.fusion_unit": _check_fusion_unit,
    "validate.dimension_consistency": lambda g: _dimension_check(g, quantum=False),
    "validate.quantum_dimension_consistency": lambda g: _dimension_check(g, quantum=True),
    "validate.associativity": _check_associativity,
}


def _record(check_id: str, name: str, rows: Rows, worst: float) -> CheckRecord:
    if not rows:
        return CheckRecord(
            check_id=check_id,
            check_name=name,
            status=STATUS_PASS,
            summary=f"✓ {name}",
            worst_residual=worst,
        )
    first = rows[0]
    witness = f"{first.get('label', first.get('entry', ''))}: {first['problem']}"
    return CheckRecord(
        check_id=check_id,
        check_name=name,
        status=STATUS_FAIL,
        summary=f"✗ {name}: {len(rows)} violation(s)",
        worst_residual=worst,
        witness=witness,
        issue_count=len(rows),
        details=pd.DataFrame(rows),
    )


def validate_structure(g: QuantumGroupData) -> list[CheckRecord]:
    """Records for the per-irrep and conjugation invariants."""
    return [
        _record(cid, STRUCTURAL_VALIDATION_CHECKS[cid], *check(g))
        for cid, check in _STRUCTURAL.items()
    ]


def validate_fusion(g: QuantumGroupData) -> list[CheckRecord]:
    """Records for the fusion-table invariants."""
    return [
        _record(cid, FUSION_VALIDATION_CHECKS[cid], *check(g))
        for cid, check in _FUSION.items()
    ]


def validate(g: QuantumGroupData) -> VerificationReport:
    """Check every fusion-data invariant.

    Returns
    -------
    VerificationReport
        One record per invariant; ``report.violations`` is empty iff the
        instance is valid.
    """
    records = validate_structure(g) + validate_fusion(g)
    report = VerificationReport(instance=g.name, checks=records, tolerance=g.tolerance)
    if report.violations:
        logger.info(
            "instance %r: %d invariant(s) violated: %s",
            g.name,
            len(report.violations),
            ", ".join(r.check_id for r in report.violations),
        )
    return report


# ═══════════════════════════════════════════════════════════════════════════════
# Tables for display
# ═══════════════════════════════════════════════════════════════════════════════

def irrep_frame(g: QuantumGroupData) -> pd.DataFrame:
    """One row per irrep: label, dim, eigenvalues, d_α, conjugate, σ_α."""
    rows = [
        {
            "label": a,
            "dim": info.dim,
            "f_eigenvalues": ", ".join(f"{lam:.6g}" for lam in info.f_eigenvalues),
            "quantum_dimension": info.quantum_dimension,
            "conjugate": info.conjugate,
            "conj_index_map": ", ".join(str(s) for s in info.conj_index_map),
        }
        for a, info in g.irreps.items()
    ]
    return pd.DataFrame(
        rows,
        columns=["label", "dim", "f_eigenvalues", "quantum_dimension",
                 "conjugate", "conj_index_map"],
    )


def format_decomp(decomp: Mapping[str, int]) -> str:
    """``{"t": 1, "v": 2}`` → ``"t + 2·v"``."""
    parts = [c if m == 1 else f"{m}·{c}" for c, m in decomp.items() if m]
    return " + ".join(parts) if parts else "0"


def fusion_frame(g: QuantumGroupData) -> pd.DataFrame:
    """One row per fusion entry: a, b, decomposition, completeness flag."""
    rows = [
        {"a": e.a, "b": e.b, "decomposition": format_decomp(e.decomp), "complete": e.complete}
        for e in g.fusion
    ]
    return pd.DataFrame(rows, columns=["a", "b", "decomposition", "complete"])
