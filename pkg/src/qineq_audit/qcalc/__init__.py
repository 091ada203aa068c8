# src/qineq_audit/qcalc/__init__.py
"""q-calculus engine: Jackson sums, q-derivatives and q-integrals."""
from .core import (
    Interval,
    QLike,
    QParam,
    SeriesResult,
    TruncationPolicy,
    as_qparam,
    jackson_nodes,
    jackson_sum,
    q_bracket,
    tail_window,
)
from .funcspec import CONVEX_ABS_DQ_POW_R, CONVEX_F, FuncSpec
from .limits import (
    DEFAULT_Q_SCHEDULE,
    ConvergenceRecord,
    classical_limit_probe_derivative,
    classical_limit_probe_integral,
    extrapolate_to_classical,
)
from .operators import (
    CLASSICAL_POLICY,
    CLASSICAL_PROXY,
    QIntegralResult,
    classical_proxy_mean,
    integral_mean,
    q_derivative,
    q_derivative_at_left_endpoint,
    q_difference_quotient,
    q_integral,
    q_integral_between,
)

__all__ = [
    "CLASSICAL_POLICY",
    "CLASSICAL_PROXY",
    "CONVEX_ABS_DQ_POW_R",
    "CONVEX_F",
    "DEFAULT_Q_SCHEDULE",
    "ConvergenceRecord",
    "FuncSpec",
    "Interval",
    "QIntegralResult",
    "QLike",
    "QParam",
    "SeriesResult",
    "TruncationPolicy",
    "as_qparam",
    "classical_limit_probe_derivative",
    "classical_limit_probe_integral",
    "classical_proxy_mean",
    "extrapolate_to_classical",
    "integral_mean",
    "jackson_nodes",
    "jackson_sum",
    "q_bracket",
    "q_derivative",
    "q_derivative_at_left_endpoint",
    "q_difference_quotient",
    "q_integral",
    "q_integral_between",
    "tail_window",
]
