# src/qineq_audit/campaign/__init__.py
"""Audit campaigns over the function corpus and their reports."""
from .common import AuditKind, CampaignConfig, build_campaign_config, load_campaign_file
from .io import emit_report, load_report, report_to_frame, report_to_json
from .main import run_audit
from .report import (
    CSV_COLUMNS,
    SUMMARY_COLUMNS,
    AuditRecord,
    AuditReport,
    record_from_verdict,
    summarise,
    summary_frame,
)

__all__ = [
    "CSV_COLUMNS",
    "SUMMARY_COLUMNS",
    "AuditKind",
    "AuditRecord",
    "AuditReport",
    "CampaignConfig",
    "build_campaign_config",
    "emit_report",
    "load_campaign_file",
    "load_report",
    "record_from_verdict",
    "report_to_frame",
    "report_to_json",
    "run_audit",
    "summarise",
    "summary_frame",
]
