# src/qineq_audit/config/__init__.py
"""Configuration package for the auditor."""
from .config import (
    CAMPAIGN_DEFAULTS,
    DEFAULT_EPS_REL,
    DEFAULT_N_MAX,
    DEFAULT_SEED,
    LOCAL_RESULTS_DIR,
    MAX_WORKERS,
    AuditContextFilter,
    setup_logging,
)

__all__ = [
    "AuditContextFilter",
    "CAMPAIGN_DEFAULTS",
    "DEFAULT_EPS_REL",
    "DEFAULT_N_MAX",
    "DEFAULT_SEED",
    "LOCAL_RESULTS_DIR",
    "MAX_WORKERS",
    "setup_logging",
]
