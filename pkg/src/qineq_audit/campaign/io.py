# src/qineq_audit/campaign/io.py
"""Writing audit reports as CSV or JSON and reading JSON reports back."""

import json
import logging
import math
from pathlib import Path
from typing import Any

import pandas as pd

from .report import CSV_COLUMNS, AuditRecord, AuditReport

logger = logging.getLogger(__name__)


def _finite_or_null(value: Any) -> Any:
    """Replace NaN and infinities by None anywhere in a JSON tree."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _finite_or_null(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_or_null(v) for v in value]
    return value


def report_to_json(report: AuditReport) -> str:
    """
    Serialise the whole record tree as strict JSON.

    Floats use Python's shortest round-trip repr, so parsing the output
    reproduces every finite value bit for bit. Non-finite values become
    ``null``.
    """
    tree = {
        "metadata": report.metadata,
        "summary": report.summary,
        "records": [record.as_dict() for record in report.records],
    }
    return json.dumps(_finite_or_null(tree), indent=2, allow_nan=False) + "\n"


def report_to_frame(report: AuditReport) -> pd.DataFrame:
    return pd.DataFrame(
        [_finite_or_null(record.csv_row()) for record in report.records],
        columns=list(CSV_COLUMNS),
    )


def emit_report(report: AuditReport, fmt: str, path: str | Path) -> Path:
    """
    Write ``report`` to ``path`` as ``csv`` or ``json``.

    CSV has the 13 fixed columns; missing and non-finite values are empty
    cells. Both formats write floats in shortest round-trip form, so a
    value reads the same in either file.

    Raises
    ------
    OSError
        If the file cannot be written.
    ValueError
        For an unknown format.
    """
    path = Path(path)
    if fmt not in ("csv", "json"):
        raise ValueError(f"Unknown report format {fmt!r}")
    try:
        logger.debug("Saving report locally", extra={"path": str(path)})
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            report_to_frame(report).to_csv(path, index=False, lineterminator="\n")
        else:
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(report_to_json(report))
    except OSError as e:
        logger.error(f"Failed to write report to {path}: {e}")
        raise
    logger.info(
        "Report saved", extra={"path": str(path), "records": len(report.records)}
    )
    return path


def load_report(path: str | Path) -> AuditReport:
    """Read a JSON report written by ``emit_report``; null lhs/rhs/margin read as NaN."""
    with open(path, encoding="utf-8") as f:
        tree = json.load(f)
    return AuditReport(
        metadata=tree["metadata"],
        records=[AuditRecord.from_dict(row) for row in tree["records"]],
        summary=tree["summary"],
    )
