# src/qineq_audit/inequalities/hermite_hadamard.py
"""The quantum Hermite-Hadamard inequality."""

from logging import getLogger

from ..config.config import DEFAULT_SEED
from ..corpus import check_function_convexity
from ..qcalc import FuncSpec, QLike, TruncationPolicy, as_qparam, integral_mean
from .common import ReasonCode, Verdict, VerdictParams, make_verdict

logger = getLogger(__name__)

HH_LEFT_ID = "hermite_hadamard_left"
HH_RIGHT_ID = "hermite_hadamard_right"


def hermite_hadamard(
    f: FuncSpec,
    q: QLike,
    policy: TruncationPolicy | None = None,
    seed: int = DEFAULT_SEED,
) -> tuple[Verdict, Verdict]:
    """
    Check both halves of

        f((qa + b)/(1 + q)) <= (1/(b-a)) int_a^b f d_q^a t <= (q f(a) + f(b))/(1 + q).

    Both verdicts carry ``hypothesis_unmet`` when sampled convexity of f fails.
    """
    qp = as_qparam(q)
    qv = qp.q
    a, b = f.interval.a, f.interval.b
    mean, integral = integral_mean(f, qp, f.interval, policy or TruncationPolicy())
    convexity = check_function_convexity(f, seed)

    reason = ReasonCode.NONE
    if not convexity.passed:
        reason = ReasonCode.HYPOTHESIS_UNMET
    elif not integral.converged:
        reason = ReasonCode.NOT_CONVERGED
    diagnostics = {
        "mean": mean,
        "convexity_worst_violation": convexity.worst_violation,
        "convexity_passed": convexity.passed,
    }
    params = VerdictParams(function=f.name, a=a, b=b, q=qv)

    left_point = (qv * a + b) / (1.0 + qv)
    left = make_verdict(
        HH_LEFT_ID, f.value(left_point), mean, params, diagnostics, reason
    )
    right_value = (qv * f.value(a) + f.value(b)) / (1.0 + qv)
    right = make_verdict(HH_RIGHT_ID, mean, right_value, params, diagnostics, reason)
    return left, right
