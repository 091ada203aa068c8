# src/qineq_audit/campaign/report.py
"""Audit records, the report container and its summary tallies."""

import json
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

import pandas as pd

from ..inequalities import ReasonCode, Verdict

CSV_COLUMNS = (
    "audit_kind",
    "function",
    "q",
    "x",
    "r",
    "variant_pairing",
    "variant_first_factor",
    "moment_source",
    "lhs",
    "rhs",
    "margin",
    "holds",
    "reason_code",
)

SUMMARY_COLUMNS = ("total", "pass", "fail", "malformed", "asserted", "asserted_failed")


@dataclass(frozen=True)
class AuditRecord:
    """
    One row of an audit report.

    ``audit_kind`` is qualified as ``<kind>.<check>``. ``asserted`` marks
    claims the auditor expects to hold (sound bounds, exact identities,
    regression detection); ``passed`` says whether such a claim did.
    Informational records, such as the bounds as printed, have
    ``asserted`` False and ``passed`` equal to ``holds``.
    """

    audit_kind: str
    function: str
    q: float | None = None
    x: float | None = None
    r: float | None = None
    variant_pairing: str = ""
    variant_first_factor: str = ""
    moment_source: str = ""
    lhs: float = math.nan
    rhs: float = math.nan
    margin: float = math.nan
    holds: bool = False
    reason_code: str = ""
    asserted: bool = False
    passed: bool = False
    detail: Mapping[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.audit_kind.split(".", 1)[0]

    @property
    def malformed(self) -> bool:
        return self.reason_code == ReasonCode.MALFORMED.value

    @property
    def status(self) -> str:
        if self.malformed:
            return "malformed"
        return "pass" if self.holds else "fail"

    def sort_key(self) -> tuple:
        def numeric(value: float | None) -> tuple[int, float]:
            return (1, 0.0) if value is None else (0, value)

        return (
            self.audit_kind,
            self.function,
            numeric(self.q),
            numeric(self.x),
            numeric(self.r),
            self.variant_pairing,
            self.variant_first_factor,
            self.moment_source,
            json.dumps(self.detail, sort_keys=True, default=str),
        )

    def csv_row(self) -> dict[str, Any]:
        return {column: getattr(self, column) for column in CSV_COLUMNS}

    def as_dict(self) -> dict[str, Any]:
        row = self.csv_row()
        row.update(asserted=self.asserted, passed=self.passed, detail=dict(self.detail))
        return row

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AuditRecord":
        fields = {k: data[k] for k in data if k in cls.__dataclass_fields__}
        # strict JSON stores NaN as null
        for name in ("lhs", "rhs", "margin"):
            if fields.get(name, math.nan) is None:
                fields[name] = math.nan
        return cls(**fields)


def record_from_verdict(
    audit_kind: str,
    verdict: Verdict,
    asserted: bool = False,
    moment_source: str = "",
    variant_pairing: str = "",
    variant_first_factor: str = "",
) -> AuditRecord:
    """Flatten a verdict into a record; an asserted verdict passes iff it holds."""
    bound = verdict.params.bound
    return AuditRecord(
        audit_kind=audit_kind,
        function=verdict.params.function,
        q=verdict.params.q,
        x=verdict.params.x,
        r=bound.r if bound is not None else None,
        variant_pairing=variant_pairing,
        variant_first_factor=variant_first_factor,
        moment_source=moment_source,
        lhs=verdict.lhs,
        rhs=verdict.rhs,
        margin=verdict.margin,
        holds=verdict.holds,
        reason_code=verdict.reason_code.value,
        asserted=asserted,
        passed=verdict.holds,
        detail={
            "inequality_id": verdict.inequality_id,
            "params": verdict.params.as_dict(),
            "diagnostics": dict(verdict.diagnostics),
        },
    )


@dataclass
class AuditReport:
    metadata: dict[str, Any]
    records: list[AuditRecord]
    summary: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def asserted_failures(self) -> list[AuditRecord]:
        return [r for r in self.records if r.asserted and not r.passed]

    @property
    def violations(self) -> list[AuditRecord]:
        return [r for r in self.records if not r.holds]


def summary_frame(records: Iterable[AuditRecord]) -> pd.DataFrame:
    """Pass/fail/malformed tallies per audit kind, with a TOTAL row."""
    frame = pd.DataFrame(
        [
            {
                "kind": r.kind,
                "status": r.status,
                "asserted": r.asserted,
                "asserted_failed": r.asserted and not r.passed,
            }
            for r in records
        ],
        columns=["kind", "status", "asserted", "asserted_failed"],
    )
    grouped_stats = []
    for kind, df in frame.groupby("kind", sort=True):
        grouped_stats.append(
            {
                "kind": kind,
                "total": len(df),
                "pass": int((df["status"] == "pass").sum()),
                "fail": int((df["status"] == "fail").sum()),
                "malformed": int((df["status"] == "malformed").sum()),
                "asserted": int(df["asserted"].sum()),
                "asserted_failed": int(df["asserted_failed"].sum()),
            }
        )
    summary = pd.DataFrame(grouped_stats, columns=["kind", *SUMMARY_COLUMNS])
    total_row = {"kind": "TOTAL", **{c: int(summary[c].sum()) for c in SUMMARY_COLUMNS}}
    return pd.concat([summary, pd.DataFrame([total_row])], ignore_index=True)


def summarise(records: Iterable[AuditRecord]) -> dict[str, dict[str, int]]:
    """Summary tallies keyed by audit kind (the TOTAL row excluded)."""
    frame = summary_frame(records)
    frame = frame[frame["kind"] != "TOTAL"]
    return {
        row["kind"]: {c: int(row[c]) for c in SUMMARY_COLUMNS}
        for row in frame.to_dict("records")
    }
