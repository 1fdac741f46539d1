"""
Exception hierarchy for the CQG Toolbox.

Invariant violations found by ``validate`` are reported as data; the
exceptions below signal misuse (unknown labels, wrong spaces, non-Kac input
to β₁, …) or unreadable input files.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from cqg.io.reporters import VerificationReport


class CQGError(Exception):
    """Base class of every error raised by the toolbox."""


class UnknownIrrepError(CQGError, KeyError):
    """An irrep label that the instance does not carry."""

    def __init__(self, label: str, instance: str = "") -> None:
        self.label = label
        self.instance = instance
        where = f" in instance {instance!r}" if instance else ""
        super().__init__(f"unknown irrep label {label!r}{where}")

    def __str__(self) -> str:
        return self.args[0]


class TruncationOverflow(CQGError):
    """A fusion product needs an entry that leaves the truncation window."""

    def __init__(self, a: str, b: str, reason: str = "incomplete") -> None:
        self.a = a
        self.b = b
        super().__init__(
            f"fusion product {a} ⊗ {b} leaves the truncation window ({reason})"
        )


class NonKacInstance(CQGError):
    """An operation defined only for Kac instances got a non-Kac one."""


class NoNormOracle(CQGError):
    """The instance does not provide an L¹ / L∞ norm oracle."""


class InvalidGroupError(CQGError):
    """A finite group table violates the group axioms."""


class IncompleteIrrepSetError(CQGError):
    """Explicit irreps do not form a complete pairwise-inequivalent set."""


class NonUnitaryIrrepError(CQGError):
    """Explicit irrep matrices are not unitary or not a homomorphism."""


class InvalidParameterError(CQGError):
    """A constructor parameter lies outside its admissible range."""


class UnknownInstanceError(CQGError):
    """An instance selector names no built-in instance and no file."""


class InstanceParseError(CQGError):
    """An instance file is not valid JSON or does not follow the schema."""


class InstanceValidationError(CQGError):
    """An instance parsed but violates its invariants.

    The full :class:`~cqg.io.reporters.VerificationReport` is attached as
    ``report``.
    """

    def __init__(self, message: str, report: "VerificationReport") -> None:
        self.report = report
        super().__init__(message)


class ElementFormatError(CQGError):
    """An element file or term list is malformed or out of range."""


class SpaceMismatchError(CQGError):
    """Two elements (or an element and an operation) live in different spaces."""


class UnknownModeError(CQGError):
    """An unsupported centrality mode was requested."""
