# src/qineq_audit/moments/__init__.py
"""Moment kinds, their closed forms and series values."""
from .audit import MomentAuditEntry, MomentAuditReport, audit_moments, deviates
from .closed_form import moment_closed_form
from .kinds import FIXED_KINDS, PARAMETRIC_KINDS, MomentKind, MomentSource, integrand
from .series import MomentSet, moment_series, moment_series_result, moment_set

__all__ = [
    "FIXED_KINDS",
    "PARAMETRIC_KINDS",
    "MomentAuditEntry",
    "MomentAuditReport",
    "MomentKind",
    "MomentSet",
    "MomentSource",
    "audit_moments",
    "deviates",
    "integrand",
    "moment_closed_form",
    "moment_series",
    "moment_series_result",
    "moment_set",
]
