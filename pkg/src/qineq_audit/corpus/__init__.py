# src/qineq_audit/corpus/__init__.py
"""Builtin test functions and sampled hypothesis checks."""
from .convexity import (
    ConvexityVerdict,
    check_derivative_power_convexity,
    check_function_convexity,
    check_midpoint_convexity,
    estimate_derivative_bound,
)
from .registry import (
    UNIT,
    WIDE,
    builtin_corpus,
    corpus_names,
    get_function,
    node_indicator,
    select_corpus,
)

__all__ = [
    "UNIT",
    "WIDE",
    "ConvexityVerdict",
    "builtin_corpus",
    "check_derivative_power_convexity",
    "check_function_convexity",
    "check_midpoint_convexity",
    "corpus_names",
    "estimate_derivative_bound",
    "get_function",
    "node_indicator",
    "select_corpus",
]
