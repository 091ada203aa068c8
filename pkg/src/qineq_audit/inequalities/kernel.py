# src/qineq_audit/inequalities/kernel.py
"""A bound that holds whenever the Montgomery identity does."""

from logging import getLogger

from ..config.config import SOUND_KERNEL_EPS_REL
from ..montgomery import KernelReading, is_node_aligned, kernel_series, normalized_point
from ..qcalc import FuncSpec, QLike, TruncationPolicy, as_qparam, integral_mean
from .common import ReasonCode, Verdict, VerdictParams, make_verdict

logger = getLogger(__name__)

SOUND_KERNEL_ID = "sound_kernel"


def sound_kernel_bound(
    f: FuncSpec,
    q: QLike,
    x: float,
    policy: TruncationPolicy | None = None,
    reading: KernelReading = KernelReading.FORMAL_SPLIT,
) -> Verdict:
    """
    Check |f(x) - mean| <= (b - a) int_0^1 |K_s(t)| |aD_q f(tb + (1-t)a)| d_q t.

    Under ``formal_split`` each node's coefficient enters by modulus after
    the kernel integral is split at s. When s is 0 or a power of q the two
    node sets coincide and their coefficients are merged first, which is the
    pointwise sum; the result is the tightest bound the representation gives.

    Both sides are summed to at least 1e-15 relative accuracy: the bound is
    attained when aD_q f keeps one sign and s is 0.
    """
    qp = as_qparam(q)
    policy = policy or TruncationPolicy()
    policy = TruncationPolicy(min(policy.eps_rel, SOUND_KERNEL_EPS_REL), policy.n_max)
    reading = KernelReading(reading)
    s = normalized_point(f.interval, x).s
    mean, integral = integral_mean(f, qp, f.interval, policy)
    lhs = abs(f.value(x) - mean)

    effective = reading
    if reading is KernelReading.FORMAL_SPLIT and is_node_aligned(s, qp):
        effective = KernelReading.POINTWISE
    series = kernel_series(f, qp, x, f.interval, policy, effective, absolute=True)
    rhs = f.interval.length * series.value

    reason = ReasonCode.NONE
    if not f.continuous:
        reason = ReasonCode.DISCONTINUOUS
    elif not (series.converged and integral.converged):
        reason = ReasonCode.NOT_CONVERGED
    params = VerdictParams(
        function=f.name, a=f.interval.a, b=f.interval.b, q=qp.q, x=x
    )
    diagnostics = {
        "s": s,
        "reading": reading.value,
        "effective_reading": effective.value,
        "kernel_terms": series.terms_used,
    }
    return make_verdict(SOUND_KERNEL_ID, lhs, rhs, params, diagnostics, reason)
