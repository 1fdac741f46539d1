"""
Readers and writers for instance and element files (JSON).

Instance file::

    {"name": ..., "trivial": ...,            # "trivial" optional
     "irreps": [{"label", "dim", "f_eigenvalues", "conjugate", "conj_index_map"}],
     "fusion": [{"a", "b", "decomp": {label: multiplicity}, "complete"}],
     "tolerance": ...}

Element file::

    {"space": "L1" | "L2" | "Linf", "instance": ...,   # "instance" optional
     "terms": [{"irrep", "row", "col", "re", "im"}]}

    {"space": "CHAR", "terms": [{"irrep", "re", "im"}]}

All encoding handling is centralised here.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import jsonschema
from jsonschema import Draft7Validator

from cqg.config.constants import (
    DEFAULT_TOLERANCE,
    FIELD_A,
    FIELD_B,
    FIELD_COL,
    FIELD_COMPLETE,
    FIELD_CONJ_INDEX_MAP,
    FIELD_CONJUGATE,
    FIELD_DECOMP,
    FIELD_DIM,
    FIELD_EIGENVALUES,
    FIELD_FUSION,
    FIELD_IM,
    FIELD_INSTANCE,
    FIELD_IRREP,
    FIELD_IRREPS,
    FIELD_LABEL,
    FIELD_NAME,
    FIELD_RE,
    FIELD_ROW,
    FIELD_SPACE,
    FIELD_TERMS,
    FIELD_TOLERANCE,
    FIELD_TRIVIAL,
    JSON_ENCODING,
    SPACE_CHAR,
)
from cqg.core.elements import SPACES, BlockElement, element_class
from cqg.core.errors import (
    ElementFormatError,
    InstanceParseError,
    InstanceValidationError,
)
from cqg.core.fusion_data import (
    CharacterRingElement,
    FusionEntry,
    FusionTable,
    IrrepInfo,
    QuantumGroupData,
    validate as validate_instance,
)

logger = logging.getLogger(__name__)

Element = Union[BlockElement, CharacterRingElement]


def _read_json(path: Path, what: str) -> Any:
    if not path.exists():
        raise FileNotFoundError(f"{what} file not found: {path}")
    try:
        with open(path, encoding=JSON_ENCODING) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"{path}: invalid JSON ({exc})") from exc


def _write_json(payload: dict, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding=JSON_ENCODING) as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return path


# ═══════════════════════════════════════════════════════════════════════════════
# Schemas
# ═══════════════════════════════════════════════════════════════════════════════

# Types and field presence only; numeric invariants belong to ``validate``.
INSTANCE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [FIELD_NAME, FIELD_IRREPS],
    "properties": {
        FIELD_NAME: {"type": "string"},
        FIELD_TRIVIAL: {"type": "string"},
        FIELD_TOLERANCE: {"type": "number"},
        FIELD_IRREPS: {
            "type": "array",
            "items": {
                "type": "object",
                "required": [FIELD_LABEL, FIELD_DIM, FIELD_EIGENVALUES, FIELD_CONJUGATE, FIELD_CONJ_INDEX_MAP],
                "properties": {
                    FIELD_LABEL: {"type": "string"},
                    FIELD_DIM: {"type": "integer"},
                    FIELD_EIGENVALUES: {"type": "array", "items": {"type": "number"}},
                    FIELD_CONJUGATE: {"type": "string"},
                    FIELD_CONJ_INDEX_MAP: {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
        FIELD_FUSION: {
            "type": "array",
            "items": {
                "type": "object",
                "required": [FIELD_A, FIELD_B, FIELD_DECOMP],
                "properties": {
                    FIELD_A: {"type": "string"},
                    FIELD_B: {"type": "string"},
                    FIELD_DECOMP: {"type": "object", "additionalProperties": {"type": "number"}},
                    FIELD_COMPLETE: {"type": "boolean"},
                },
            },
        },
    },
}

_COEFFICIENT = {FIELD_RE: {"type": "number"}, FIELD_IM: {"type": "number"}}

ELEMENT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [FIELD_SPACE, FIELD_TERMS],
    "properties": {
        FIELD_SPACE: {"enum": [*SPACES, SPACE_CHAR]},
        FIELD_INSTANCE: {"type": "string"},
        FIELD_TERMS: {"type": "array", "items": {"type": "object"}},
    },
    "if": {"properties": {FIELD_SPACE: {"const": SPACE_CHAR}}},
    "then": {
        "properties": {
            FIELD_TERMS: {
                "items": {
                    "required": [FIELD_IRREP],
                    "properties": {FIELD_IRREP: {"type": "string"}, **_COEFFICIENT},
                },
            },
        },
    },
    "else": {
        "properties": {
            FIELD_TERMS: {
                "items": {
                    "required": [FIELD_IRREP, FIELD_ROW, FIELD_COL],
                    "properties": {
                        FIELD_IRREP: {"type": "string"},
                        FIELD_ROW: {"type": "integer", "minimum": 0},
                        FIELD_COL: {"type": "integer", "minimum": 0},
                        **_COEFFICIENT,
                    },
                },
            },
        },
    },
}


def _check_schema(payload: Any, schema: dict, source: str, error: type[Exception]) -> None:
    """Raise ``error`` naming the offending JSON path when ``payload`` breaks ``schema``."""
    try:
        jsonschema.validate(instance=payload, schema=schema, cls=Draft7Validator)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path)
        raise error(f"{source}: {where + ': ' if where else ''}{exc.message}") from exc


# ═══════════════════════════════════════════════════════════════════════════════
# Instances
# ═══════════════════════════════════════════════════════════════════════════════

def parse_instance(payload: Any, source: str = "<instance>") -> QuantumGroupData:
    """Build a :class:`QuantumGroupData` from decoded JSON, without validating it.

    Only :data:`INSTANCE_SCHEMA` and label uniqueness are enforced here.
    Numeric invariants are left to ``validate``.

    Raises
    ------
    InstanceParseError
    """
    _check_schema(payload, INSTANCE_SCHEMA, source, InstanceParseError)

    irreps: dict[str, IrrepInfo] = {}
    for k, item in enumerate(payload[FIELD_IRREPS]):
        label = item[FIELD_LABEL]
        if label in irreps:
            raise InstanceParseError(f"{source}: irreps/{k}: duplicate label {label!r}")
        irreps[label] = IrrepInfo(
            label,
            int(item[FIELD_DIM]),
            tuple(float(x) for x in item[FIELD_EIGENVALUES]),
            item[FIELD_CONJUGATE],
            tuple(int(x) for x in item[FIELD_CONJ_INDEX_MAP]),
        )

    entries = []
    seen = set()
    for k, item in enumerate(payload.get(FIELD_FUSION, [])):
        a, b = item[FIELD_A], item[FIELD_B]
        if (a, b) in seen:
            raise InstanceParseError(f"{source}: fusion/{k}: duplicate entry for {a} ⊗ {b}")
        seen.add((a, b))
        entries.append(FusionEntry(a, b, dict(item[FIELD_DECOMP]), item.get(FIELD_COMPLETE, True)))

    return QuantumGroupData(
        name=payload[FIELD_NAME],
        irreps=irreps,
        fusion=FusionTable.from_entries(entries),
        tolerance=float(payload.get(FIELD_TOLERANCE, DEFAULT_TOLERANCE)),
        trivial=payload.get(FIELD_TRIVIAL, ""),
    )


def load_instance(path: str | Path, *, validate: bool = True) -> QuantumGroupData:
    """Read an instance file.

    Parameters
    ----------
    path : str or Path
    validate : bool
        Run ``validate`` and refuse instances with any violation.

    Returns
    -------
    QuantumGroupData

    Raises
    ------
    FileNotFoundError
    InstanceParseError
    InstanceValidationError
        Carries the full report as ``.report``.
    """
    path = Path(path)
    g = parse_instance(_read_json(path, "Instance"), str(path))
    logger.info("loaded instance %r from %s (%d irreps)", g.name, path, len(g.irreps))

    if validate:
        report = validate_instance(g)
        if report.violations:
            first = report.violations[0]
            raise InstanceValidationError(
                f"{path}: instance {g.name!r} violates {len(report.violations)} "
                f"invariant(s); first: {first.check_name} ({first.witness})",
                report,
            )
    return g


def instance_to_dict(g: QuantumGroupData) -> dict[str, Any]:
    return {
        FIELD_NAME: g.name,
        FIELD_TRIVIAL: g.trivial,
        FIELD_TOLERANCE: g.tolerance,
        FIELD_IRREPS: [
            {
                FIELD_LABEL: info.label,
                FIELD_DIM: info.dim,
                FIELD_EIGENVALUES: list(info.f_eigenvalues),
                FIELD_CONJUGATE: info.conjugate,
                FIELD_CONJ_INDEX_MAP: list(info.conj_index_map),
            }
            for info in g.irreps.values()
        ],
        FIELD_FUSION: [
            {
                FIELD_A: e.a,
                FIELD_B: e.b,
                FIELD_DECOMP: dict(e.decomp),
                FIELD_COMPLETE: e.complete,
            }
            for e in g.fusion
        ],
    }


def save_instance(g: QuantumGroupData, path: str | Path) -> Path:
    """Write an instance file that :func:`load_instance` reads back unchanged."""
    return _write_json(instance_to_dict(g), Path(path))


# ═══════════════════════════════════════════════════════════════════════════════
# Elements
# ═══════════════════════════════════════════════════════════════════════════════

def element_space(path: str | Path) -> str:
    """The ``space`` tag of an element file, without building the element."""
    payload = _read_json(Path(path), "Element")
    _check_schema(payload, ELEMENT_SCHEMA, str(path), ElementFormatError)
    return payload[FIELD_SPACE]


def _coefficient(term: dict) -> complex:
    return complex(term.get(FIELD_RE, 0.0), term.get(FIELD_IM, 0.0))


def parse_element(payload: Any, g: QuantumGroupData, source: str = "<element>") -> Element:
    """Build an element of the tagged space from decoded JSON.

    Raises
    ------
    ElementFormatError
    UnknownIrrepError
    """
    _check_schema(payload, ELEMENT_SCHEMA, source, ElementFormatError)
    space = payload[FIELD_SPACE]
    terms = payload[FIELD_TERMS]

    instance = payload.get(FIELD_INSTANCE)
    if instance is not None and instance != g.name:
        raise ElementFormatError(
            f"{source}: element belongs to instance {instance!r}, not {g.name!r}"
        )

    if space == SPACE_CHAR:
        coeffs: dict[str, complex] = {}
        for term in terms:
            label = term[FIELD_IRREP]
            g.info(label)
            coeffs[label] = coeffs.get(label, 0j) + _coefficient(term)
        return CharacterRingElement(coeffs)

    parsed = [
        (term[FIELD_IRREP], int(term[FIELD_ROW]), int(term[FIELD_COL]), _coefficient(term))
        for term in terms
    ]
    return element_class(space).from_terms(g, parsed)


def load_element(path: str | Path, g: QuantumGroupData) -> Element:
    """Read an element file against instance ``g``.

    Raises
    ------
    FileNotFoundError
    ElementFormatError
    UnknownIrrepError
    """
    path = Path(path)
    try:
        payload = _read_json(path, "Element")
    except InstanceParseError as exc:
        raise ElementFormatError(str(exc)) from exc
    x = parse_element(payload, g, str(path))
    logger.debug("loaded %s element from %s", getattr(x, "space", SPACE_CHAR), path)
    return x


def element_to_dict(x: Element, *, instance: Optional[str] = None) -> dict[str, Any]:
    if isinstance(x, CharacterRingElement):
        payload: dict[str, Any] = {FIELD_SPACE: SPACE_CHAR}
        terms = [
            {FIELD_IRREP: label, FIELD_RE: complex(c).real, FIELD_IM: complex(c).imag}
            for label, c in x.coeffs.items()
            if c != 0
        ]
    else:
        payload = {FIELD_SPACE: x.space}
        terms = [
            {
                FIELD_IRREP: label,
                FIELD_ROW: i,
                FIELD_COL: j,
                FIELD_RE: c.real,
                FIELD_IM: c.imag,
            }
            for label, i, j, c in x.terms()
        ]
    if instance is not None:
        payload[FIELD_INSTANCE] = instance
    payload[FIELD_TERMS] = terms
    return payload


def save_element(x: Element, path: str | Path, *, instance: Optional[str] = None) -> Path:
    """Write an element file that :func:`load_element` reads back unchanged."""
    return _write_json(element_to_dict(x, instance=instance), Path(path))
