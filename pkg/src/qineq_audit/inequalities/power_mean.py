# src/qineq_audit/inequalities/power_mean.py
"""Power-mean and Hölder bounds built on the Montgomery identity."""

from logging import getLogger

from ..config.config import DEFAULT_SEED
from ..errors import PreconditionError
from ..moments import MomentKind as K
from ..moments import moment_set
from ..qcalc import FuncSpec, QLike, TruncationPolicy, as_qparam
from .common import (
    BoundParams,
    FirstFactor,
    MalformedBound,
    ReasonCode,
    Verdict,
    bound_context,
    clamp_tiny_negative,
    fractional_power,
    make_verdict,
    unevaluated_verdict,
)

logger = getLogger(__name__)

POWER_MEAN_ID = "power_mean"
HOLDER_ID = "holder"


def power_mean_term(weight: float, bracket: float, r: float, label: str) -> float:
    """weight^(1 - 1/r) * bracket^(1/r)."""
    return fractional_power(weight, 1.0 - 1.0 / r, f"{label}_weight") * fractional_power(
        bracket, 1.0 / r, f"{label}_bracket"
    )


def power_mean_bound(
    f: FuncSpec,
    q: QLike,
    x: float,
    params: BoundParams | None = None,
    policy: TruncationPolicy | None = None,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """
    Check |f(x) - mean| <= (b-a) [K1^(1-1/r) (A K2 + B K3)^(1/r)
                                 + K4^(1-1/r) (A K5 + B K6)^(1/r)]

    with A = |aD_q f(a)|^r and B = |aD_q f(b)|^r (exchanged under the swapped
    pairing). Moments come from ``params.moment_source``.

    A negative bracket under a fractional power makes the bound malformed:
    the verdict then has rhs NaN and ``holds`` False. At r = 1 a negative
    bracket is kept and noted in the diagnostics.

    Examples
    --------
    For f(t) = t^2 on [0, 1], q = 1/2, x = 1/2, r = 1 the stated pairing
    gives rhs 1/14 against lhs 9/28; the swapped pairing gives rhs 3/7.
    """
    params = params or BoundParams()
    qp = as_qparam(q)
    ctx = bound_context(f, qp, x, params, policy, seed)
    diagnostics = dict(ctx.diagnostics)
    if ctx.derivatives.at_a is None:
        return unevaluated_verdict(
            POWER_MEAN_ID, ctx.lhs, ctx.params, ReasonCode.HYPOTHESIS_UNMET, diagnostics
        )

    r = params.r
    A, B = ctx.endpoint_weights(r, params.pairing)
    m = moment_set(qp, ctx.s, params.moment_source, policy)
    lower = A * m[K.K2] + B * m[K.K3]
    upper = A * m[K.K5] + B * m[K.K6]
    diagnostics.update(lower_bracket=lower, upper_bracket=upper)
    try:
        rhs = ctx.length * (
            power_mean_term(m[K.K1], lower, r, "lower")
            + power_mean_term(m[K.K4], upper, r, "upper")
        )
    except MalformedBound as exc:
        diagnostics.update(malformed_quantity=exc.quantity, malformed_value=exc.value)
        logger.info(
            "Malformed power-mean bound",
            extra={"function": f.name, "q": qp.q, "x": x, "quantity": exc.quantity},
        )
        return unevaluated_verdict(
            POWER_MEAN_ID, ctx.lhs, ctx.params, ReasonCode.MALFORMED, diagnostics
        )
    if min(clamp_tiny_negative(lower), clamp_tiny_negative(upper)) < 0.0:
        diagnostics["negative_bracket"] = True
    return make_verdict(
        POWER_MEAN_ID, ctx.lhs, rhs, ctx.params, diagnostics, ctx.reason_code
    )


def holder_bound(
    f: FuncSpec,
    q: QLike,
    x: float,
    params: BoundParams,
    policy: TruncationPolicy | None = None,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """
    Check the Hölder form, with 1/p + 1/r = 1:

        (b-a) [F1^(1/p) (A int_0^s t + B int_0^s (1-t))^(1/r)
             + (int_s^1 (1-qt)^p)^(1/p) (A int_s^1 t + B int_s^1 (1-t))^(1/r)]

    F1 is int_0^s qt under ``stated_qt`` and int_0^s (qt)^p under
    ``proof_qt_pow_p``. The (1-qt)^p factor always comes from the series.
    """
    if params.r <= 1.0:
        raise PreconditionError(f"Hölder bound needs r > 1, got {params.r}")
    qp = as_qparam(q)
    p, r = params.p, params.r
    ctx = bound_context(f, qp, x, params, policy, seed)
    diagnostics = dict(ctx.diagnostics, p=p)
    if ctx.derivatives.at_a is None:
        return unevaluated_verdict(
            HOLDER_ID, ctx.lhs, ctx.params, ReasonCode.HYPOTHESIS_UNMET, diagnostics
        )

    A, B = ctx.endpoint_weights(r, params.pairing)
    m = moment_set(qp, ctx.s, params.moment_source, policy, p)
    if params.holder_first_factor is FirstFactor.STATED_QT:
        first = m[K.K1]
    else:
        first = m[K.HOLDER_LOWER]
    second = m[K.HOLDER_UPPER]
    lower = A * m[K.M_T_LOWER] + B * m[K.M_1MT_LOWER]
    upper = A * m[K.M_T_UPPER] + B * m[K.M_1MT_UPPER]
    diagnostics.update(
        first_factor=first, second_factor=second, lower_bracket=lower, upper_bracket=upper
    )
    try:
        rhs = ctx.length * (
            fractional_power(first, 1.0 / p, "first_factor")
            * fractional_power(lower, 1.0 / r, "lower_bracket")
            + fractional_power(second, 1.0 / p, "second_factor")
            * fractional_power(upper, 1.0 / r, "upper_bracket")
        )
    except MalformedBound as exc:
        diagnostics.update(malformed_quantity=exc.quantity, malformed_value=exc.value)
        return unevaluated_verdict(
            HOLDER_ID, ctx.lhs, ctx.params, ReasonCode.MALFORMED, diagnostics
        )
    return make_verdict(HOLDER_ID, ctx.lhs, rhs, ctx.params, diagnostics, ctx.reason_code)
