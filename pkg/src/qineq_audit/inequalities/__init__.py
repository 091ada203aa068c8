# src/qineq_audit/inequalities/__init__.py
"""Auditors for the quantum inequalities and their classical limits."""
from .common import (
    BoundParams,
    FirstFactor,
    Pairing,
    ReasonCode,
    Verdict,
    VerdictParams,
    endpoint_derivatives,
)
from .hermite_hadamard import hermite_hadamard
from .kernel import sound_kernel_bound
from .midpoint import (
    MidpointPlacement,
    midpoint_bounds,
    midpoint_s,
    midpoint_x,
    printed_midpoint_moments,
    printed_midpoint_rhs_r1,
)
from .ostrowski import (
    classical_midpoint,
    classical_midpoint_rhs,
    classical_ostrowski,
    ostrowski_final_form,
    ostrowski_moment_form,
)
from .power_mean import holder_bound, power_mean_bound

__all__ = [
    "BoundParams",
    "FirstFactor",
    "MidpointPlacement",
    "Pairing",
    "ReasonCode",
    "Verdict",
    "VerdictParams",
    "classical_midpoint",
    "classical_midpoint_rhs",
    "classical_ostrowski",
    "endpoint_derivatives",
    "hermite_hadamard",
    "holder_bound",
    "midpoint_bounds",
    "midpoint_s",
    "midpoint_x",
    "ostrowski_final_form",
    "ostrowski_moment_form",
    "power_mean_bound",
    "printed_midpoint_moments",
    "printed_midpoint_rhs_r1",
    "sound_kernel_bound",
]
