# src/qineq_audit/inequalities/ostrowski.py
"""Ostrowski-type bounds, quantum and classical."""

import math
from logging import getLogger

import numpy as np

from ..config.config import DEFAULT_SEED
from ..corpus import estimate_derivative_bound
from ..errors import ConfigurationError, DomainError
from ..moments import MomentKind as K
from ..moments import moment_set
from ..montgomery import normalized_point
from ..qcalc import (
    FuncSpec,
    QLike,
    TruncationPolicy,
    as_qparam,
    classical_proxy_mean,
)
from .common import (
    BoundParams,
    MalformedBound,
    ReasonCode,
    Verdict,
    VerdictParams,
    bound_context,
    fractional_power,
    make_verdict,
    unevaluated_verdict,
)

logger = getLogger(__name__)

OSTROWSKI_FINAL_ID = "ostrowski_final"
OSTROWSKI_MOMENT_ID = "ostrowski_moment"
CLASSICAL_OSTROWSKI_ID = "classical_ostrowski"
CLASSICAL_MIDPOINT_ID = "classical_midpoint"

# points used to check a claimed bound on |f'|
_SUP_SAMPLES = 1025


def _resolve_bound(
    f: FuncSpec, q, M: float | None, policy: TruncationPolicy | None
) -> tuple[float, bool]:
    """The derivative bound to use and whether it was estimated."""
    if M is None:
        M = f.derivative_bound_M
    if M is None:
        return estimate_derivative_bound(f, q, policy), True
    if not (math.isfinite(M) and M >= 0.0):
        raise DomainError(f"Derivative bound M must be finite and >= 0, got {M}")
    return float(M), False


def ostrowski_final_form(
    f: FuncSpec,
    q: QLike,
    x: float,
    M: float | None = None,
    policy: TruncationPolicy | None = None,
) -> Verdict:
    """
    Check the printed final form

        |f(x) - mean| <= q M [(x-a)^2 + (b-x)^2] / ((1+q)(b-a)).

    M defaults to the function's ``derivative_bound_M`` and is estimated when
    that is missing. This form fails for f(t) = t^2 on [0, 1] at q = x = 1/2.
    """
    qp = as_qparam(q)
    M, estimated = _resolve_bound(f, qp, M, policy)
    ctx = bound_context(f, qp, x, None, policy, M=M, with_endpoints=False)
    a, b = f.interval.a, f.interval.b
    rhs = qp.q * M * ((x - a) ** 2 + (b - x) ** 2) / ((1.0 + qp.q) * (b - a))
    diagnostics = dict(ctx.diagnostics, M_estimated=estimated)
    return make_verdict(
        OSTROWSKI_FINAL_ID, ctx.lhs, rhs, ctx.params, diagnostics, ctx.reason_code
    )


def ostrowski_moment_form(
    f: FuncSpec,
    q: QLike,
    x: float,
    M: float | None = None,
    params: BoundParams | None = None,
    policy: TruncationPolicy | None = None,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """
    Check the Ostrowski bound before it is collapsed to the final form:

        (b-a) M [K1^(1-1/r) (K2 + K3)^(1/r) + K4^(1-1/r) (K5 + K6)^(1/r)]

    with moments from ``params.moment_source``.
    """
    params = params or BoundParams(check_hypothesis=False)
    qp = as_qparam(q)
    M, estimated = _resolve_bound(f, qp, M, policy)
    ctx = bound_context(f, qp, x, params, policy, seed, M=M, with_endpoints=False)
    diagnostics = dict(ctx.diagnostics, M_estimated=estimated)
    r = params.r
    m = moment_set(qp, ctx.s, params.moment_source, policy)
    try:
        rhs = (
            ctx.length
            * M
            * (
                fractional_power(m[K.K1], 1.0 - 1.0 / r, "lower_weight")
                * fractional_power(m[K.K2] + m[K.K3], 1.0 / r, "lower_bracket")
                + fractional_power(m[K.K4], 1.0 - 1.0 / r, "upper_weight")
                * fractional_power(m[K.K5] + m[K.K6], 1.0 / r, "upper_bracket")
            )
        )
    except MalformedBound as exc:
        diagnostics.update(malformed_quantity=exc.quantity, malformed_value=exc.value)
        return unevaluated_verdict(
            OSTROWSKI_MOMENT_ID, ctx.lhs, ctx.params, ReasonCode.MALFORMED, diagnostics
        )
    return make_verdict(
        OSTROWSKI_MOMENT_ID, ctx.lhs, rhs, ctx.params, diagnostics, ctx.reason_code
    )


def _classical_mean(f: FuncSpec) -> tuple[float, bool, str]:
    """Classical mean from the primitive, or from the q -> 1 proxy without one."""
    exact = f.exact_integral()
    if exact is not None:
        return exact / f.interval.length, True, "primitive"
    mean, integral = classical_proxy_mean(f)
    return mean, integral.converged, "proxy"


def _classical_derivative(f: FuncSpec):
    if f.classical_derivative is None:
        raise ConfigurationError(f"{f.name} has no classical derivative")
    return f.classical_derivative


def classical_ostrowski(f: FuncSpec, x: float, M: float | None = None) -> Verdict:
    """
    Check |f(x) - (1/(b-a)) int_a^b f| <= M [(x-a)^2 + (b-x)^2] / (2(b-a)).

    The classical integral comes from the primitive when ``f`` has one and
    is otherwise approximated by a Jackson integral with q = 1 - 1e-6.
    A supplied M below the sampled sup |f'| is reported as an
    unmet hypothesis.
    """
    derivative = _classical_derivative(f)
    normalized_point(f.interval, x)
    a, b = f.interval.a, f.interval.b
    M = f.derivative_bound_M if M is None else M
    grid = np.linspace(a, b, _SUP_SAMPLES)
    sampled_sup = float(np.max(np.abs(derivative(grid))))
    if M is None:
        M = sampled_sup
    if not (math.isfinite(M) and M >= 0.0):
        raise DomainError(f"Derivative bound M must be finite and >= 0, got {M}")

    mean, converged, mean_source = _classical_mean(f)
    lhs = abs(f.value(x) - mean)
    rhs = M * ((x - a) ** 2 + (b - x) ** 2) / (2.0 * (b - a))
    reason = ReasonCode.NONE
    if M < sampled_sup * (1.0 - 1e-12):
        reason = ReasonCode.HYPOTHESIS_UNMET
    elif not converged:
        reason = ReasonCode.NOT_CONVERGED
    params = VerdictParams(function=f.name, a=a, b=b, x=x, M=M)
    diagnostics = {"sampled_sup": sampled_sup, "mean_source": mean_source, "mean": mean}
    return make_verdict(CLASSICAL_OSTROWSKI_ID, lhs, rhs, params, diagnostics, reason)


def classical_midpoint_rhs(f: FuncSpec, r: float = 1.0) -> float:
    """
    (b-a) / 2^(3 - 3/r) [(|f'(a)|^r/24 + |f'(b)|^r/12)^(1/r)
                         + (|f'(a)|^r/12 + |f'(b)|^r/24)^(1/r)]

    which at r = 1 is (b-a)(|f'(a)| + |f'(b)|)/8.
    """
    if not (math.isfinite(r) and r >= 1.0):
        raise DomainError(f"r must be a finite number >= 1, got {r}")
    derivative = _classical_derivative(f)
    a, b = f.interval.a, f.interval.b
    A = abs(float(derivative(a))) ** r
    B = abs(float(derivative(b))) ** r
    return (
        (b - a)
        / 2.0 ** (3.0 - 3.0 / r)
        * ((A / 24.0 + B / 12.0) ** (1.0 / r) + (A / 12.0 + B / 24.0) ** (1.0 / r))
    )


def classical_midpoint(f: FuncSpec, r: float = 1.0) -> Verdict:
    """
    Check the classical midpoint bound

        |f((a+b)/2) - (1/(b-a)) int_a^b f| <= ``classical_midpoint_rhs(f, r)``.
    """
    rhs = classical_midpoint_rhs(f, r)
    a, b = f.interval.a, f.interval.b
    x = 0.5 * (a + b)
    mean, converged, mean_source = _classical_mean(f)
    lhs = abs(f.value(x) - mean)
    reason = ReasonCode.NONE if converged else ReasonCode.NOT_CONVERGED
    params = VerdictParams(
        function=f.name, a=a, b=b, x=x, bound=BoundParams(r=r, check_hypothesis=False)
    )
    diagnostics = {"mean_source": mean_source, "mean": mean}
    return make_verdict(CLASSICAL_MIDPOINT_ID, lhs, rhs, params, diagnostics, reason)
