# src/qineq_audit/montgomery/__init__.py
"""The quantum Montgomery identity and its kernel."""
from .identity import (
    IdentitySides,
    KernelReading,
    NormalizedPoint,
    identity_sides,
    is_node_aligned,
    kernel,
    kernel_series,
    node_exponent,
    normalized_point,
    snap_to_node,
)

__all__ = [
    "IdentitySides",
    "KernelReading",
    "NormalizedPoint",
    "identity_sides",
    "is_node_aligned",
    "kernel",
    "kernel_series",
    "node_exponent",
    "normalized_point",
    "snap_to_node",
]
