"""
Report structures and writers for verification results.

Supports three output formats:
  - **JSON**       — the machine-readable report (instance, seed, tolerance,
                     one record per check).
  - **Plain text** — human-readable summary with pass/fail per check.
  - **CSV**        — one row per flagged detail, suitable for spreadsheet review.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Optional

import pandas as pd

from cqg.config.constants import (
    JSON_ENCODING,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
)

_ICONS = {STATUS_PASS: "✓", STATUS_FAIL: "✗", STATUS_SKIPPED: "–"}


# ═══════════════════════════════════════════════════════════════════════════════
# Data structure returned by every check
# ═══════════════════════════════════════════════════════════════════════════════

@dataclass
class CheckRecord:
    """Container for the outcome of a single invariant check.

    Attributes
    ----------
    check_id : str
        Stable identifier, e.g. ``"l1.matrix_units"`` or
        ``"validate.associativity"``.
    check_name : str
        Human-readable title.
    status : str
        ``"pass"``, ``"fail"`` or ``"skipped"``.
    summary : str
        One-line summary message.
    worst_residual : float
        Largest absolute residual seen (0.0 when not applicable).
    witness : str
        Description of the first / worst offending case, empty on a clean pass.
    reason : str
        Why the check was skipped (``"NonKacInstance"``, ``"NoNormOracle"``, …).
    expected_failure : bool
        ``True`` when the check asserts that a violation *exists*; it passes
        when the violation is detected.
    issue_count : int
        Number of offending cases.
    details : pd.DataFrame | None
        Table of offending cases.  Column names are check-specific.
    """

    check_id: str
    check_name: str
    status: str
    summary: str
    worst_residual: float = 0.0
    witness: str = ""
    reason: str = ""
    expected_failure: bool = False
    issue_count: int = 0
    details: Optional[pd.DataFrame] = None

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def to_dict(self) -> dict[str, Any]:
        residual = self.worst_residual
        return {
            "check_id": self.check_id,
            "check_name": self.check_name,
            "status": self.status,
            "summary": self.summary,
            "worst_residual": residual if math.isfinite(residual) else str(residual),
            "witness": self.witness,
            "reason": self.reason,
            "expected_failure": self.expected_failure,
            "issue_count": self.issue_count,
        }


@dataclass
class VerificationReport:
    """All check records produced for one instance."""

    instance: str
    checks: list[CheckRecord] = field(default_factory=list)
    seed: Optional[int] = None
    tolerance: Optional[float] = None

    def __post_init__(self) -> None:
        self.checks = sorted(self.checks, key=lambda r: r.check_id)

    @property
    def violations(self) -> list[CheckRecord]:
        """Failed records, in check-id order."""
        return [r for r in self.checks if r.status == STATUS_FAIL]

    @property
    def ok(self) -> bool:
        return not self.violations

    def get(self, check_id: str) -> CheckRecord:
        for r in self.checks:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "checks": [r.to_dict() for r in self.checks],
        }

    def to_frame(self) -> pd.DataFrame:
        """One row per check: id, status, residual, witness, summary."""
        rows = [
            {
                "check_id": r.check_id,
                "status": r.status,
                "expected_failure": r.expected_failure,
                "worst_residual": r.worst_residual,
                "witness": r.witness or r.reason,
                "summary": r.summary,
            }
            for r in self.checks
        ]
        return pd.DataFrame(
            rows,
            columns=["check_id", "status", "expected_failure",
                     "worst_residual", "witness", "summary"],
        )


# ═══════════════════════════════════════════════════════════════════════════════
# JSON report
# ═══════════════════════════════════════════════════════════════════════════════

def write_json_report(report: VerificationReport, path: str | Path) -> Path:
    """Write the report as JSON.

    Returns
    -------
    Path — the written file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding=JSON_ENCODING) as fh:
        json.dump(report.to_dict(), fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return path


def read_json_report(path: str | Path) -> dict[str, Any]:
    """Read a JSON report back as a plain dictionary."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Report file not found: {path}")
    with open(path, encoding=JSON_ENCODING) as fh:
        return json.load(fh)


# ═══════════════════════════════════════════════════════════════════════════════
# Plain-text report
# ═══════════════════════════════════════════════════════════════════════════════

def write_text_report(
    report: VerificationReport,
    path: str | Path,
    *,
    title: str = "CQG Verification Report",
) -> Path:
    """Write a human-readable plain-text report.

    Parameters
    ----------
    report : VerificationReport
    path : str or Path
        Output file path.
    title : str
        Report title.

    Returns
    -------
    Path — the written file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, "w", encoding="utf-8") as fh:
        fh.write("=" * 80 + "\n")
        fh.write(f"{title}\n")
        fh.write(f"Generated: {datetime.now():%Y-%m-%d %H:%M:%S}\n")
        fh.write("=" * 80 + "\n\n")

        fh.write(f"Instance:  {report.instance}\n")
        if report.seed is not None:
            fh.write(f"Seed:      {report.seed}\n")
        if report.tolerance is not None:
            fh.write(f"Tolerance: {report.tolerance:g}\n")
        fh.write("\n")

        fh.write("-" * 80 + "\n")
        fh.write(f"{'Check':<36} {'Status':<10} {'Residual':>12}  {'Description'}\n")
        fh.write("-" * 80 + "\n")
        for r in report.checks:
            icon = _ICONS.get(r.status, "?")
            flag = " (xfail)" if r.expected_failure else ""
            fh.write(
                f"{r.check_id:<36} {icon} {r.status:<8} {r.worst_residual:>12.3e}"
                f"  {r.check_name}{flag}\n"
            )
        fh.write("-" * 80 + "\n\n")

        for r in report.checks:
            _write_section(fh, r)

        fh.write("=" * 80 + "\n")
        fh.write("End of Report\n")
        fh.write("=" * 80 + "\n")

    return path


def _write_section(fh, record: CheckRecord) -> None:
    """Write one check's detailed section to the text report."""
    fh.write(f"\n{'=' * 80}\n")
    fh.write(f"{record.check_id}: {record.check_name}\n")
    fh.write(f"{'-' * 80}\n")
    fh.write(f"{record.summary}\n")
    if record.witness:
        fh.write(f"Witness: {record.witness}\n")
    if record.reason:
        fh.write(f"Reason:  {record.reason}\n")

    if record.details is not None and len(record.details) > 0:
        fh.write(f"\nFlagged cases ({len(record.details):,}):\n")
        cols = record.details.columns.tolist()
        fh.write(f"  {', '.join(cols)}\n")
        fh.write(f"  {'-' * 60}\n")
        for _, row in record.details.iterrows():
            values = [str(row[c]) for c in cols]
            fh.write(f"  {', '.join(values)}\n")
    fh.write("\n")


# ═══════════════════════════════════════════════════════════════════════════════
# CSV report
# ═══════════════════════════════════════════════════════════════════════════════

def write_csv_report(report: VerificationReport, path: str | Path) -> Path:
    """Write a CSV report with one row per flagged case.

    The CSV has these columns:
        ``check_id, check_name, status, issue, details``

    Checks without a details table contribute a single row when they failed.

    Returns
    -------
    Path — the written file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fieldnames = ["check_id", "check_name", "status", "issue", "details"]

    with open(path, "w", encoding="utf-8-sig", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()

        for r in report.checks:
            if r.details is not None and len(r.details) > 0:
                for _, row in r.details.iterrows():
                    detail_parts = [f"{col}={row[col]}" for col in r.details.columns]
                    writer.writerow({
                        "check_id": r.check_id,
                        "check_name": r.check_name,
                        "status": r.status,
                        "issue": r.summary,
                        "details": "; ".join(detail_parts),
                    })
            elif r.status == STATUS_FAIL:
                writer.writerow({
                    "check_id": r.check_id,
                    "check_name": r.check_name,
                    "status": r.status,
                    "issue": r.summary,
                    "details": r.witness,
                })

    return path
