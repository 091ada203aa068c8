# src/qineq_audit/inequalities/midpoint.py
"""Midpoint specialisations of the power-mean bound."""

import dataclasses
from enum import Enum
from logging import getLogger

from ..config.config import DEFAULT_SEED
from ..moments import MomentKind as K
from ..moments import MomentSource, moment_closed_form, moment_series
from ..qcalc import FuncSpec, Interval, QLike, TruncationPolicy, as_qparam
from .common import BoundParams, Verdict
from .power_mean import power_mean_bound

logger = getLogger(__name__)

_SIX_KINDS = (K.K1, K.K2, K.K3, K.K4, K.K5, K.K6)


class MidpointPlacement(str, Enum):
    Q_MID = "q_mid"  # x = (qa + b)/(1 + q)
    ARITH_MID = "arith_mid"  # x = (a + b)/2
    DUAL_Q_MID = "dual_q_mid"  # x = (a + qb)/(1 + q)


def midpoint_s(placement: MidpointPlacement, q: QLike) -> float:
    """Normalised position s = (x - a)/(b - a) of the placement."""
    q = as_qparam(q).q
    return {
        MidpointPlacement.Q_MID: 1.0 / (1.0 + q),
        MidpointPlacement.ARITH_MID: 0.5,
        MidpointPlacement.DUAL_Q_MID: q / (1.0 + q),
    }[MidpointPlacement(placement)]


def midpoint_x(placement: MidpointPlacement, q: QLike, interval: Interval) -> float:
    q = as_qparam(q).q
    a, b = interval.a, interval.b
    return {
        MidpointPlacement.Q_MID: (q * a + b) / (1.0 + q),
        MidpointPlacement.ARITH_MID: 0.5 * (a + b),
        MidpointPlacement.DUAL_Q_MID: (a + q * b) / (1.0 + q),
    }[MidpointPlacement(placement)]


def printed_midpoint_moments(placement: MidpointPlacement, q: QLike) -> dict[K, float]:
    """The six moments as printed for each placement, as rational functions of q."""
    q = as_qparam(q).q
    q1, q2 = 1.0 + q, 1.0 + q + q * q
    d = q1**3 * q2
    e = 8.0 * q1 * q2
    placement = MidpointPlacement(placement)
    if placement is MidpointPlacement.Q_MID:
        return {
            K.K1: q / q1**3,
            K.K2: q / d,
            K.K3: (q**2 + q**3) / d,
            K.K4: q**3 / q1**3,
            K.K5: 2.0 * q / d,
            K.K6: (-2.0 * q + q**3 + q**4 + q**5) / d,
        }
    if placement is MidpointPlacement.ARITH_MID:
        return {
            K.K1: q / (4.0 * q1),
            K.K2: q / (8.0 * q2),
            K.K3: (q + q**2 + 2.0 * q**3) / e,
            K.K4: q / (4.0 * q1),
            K.K5: (6.0 - q - q**2) / e,
            K.K6: (3.0 * q + 3.0 * q**2 + 2.0 * q**3 - 6.0) / e,
        }
    return {
        K.K1: q**3 / q1**3,
        K.K2: q**4 / d,
        K.K3: (q**3 + q**5) / d,
        K.K4: q / q1**3,
        K.K5: (1.0 + 2.0 * q - q**3) / d,
        K.K6: (-1.0 - q + q**2 + 2.0 * q**3) / d,
    }


def printed_midpoint_rhs_r1(
    placement: MidpointPlacement,
    q: QLike,
    dq_at_a: float,
    dq_at_b: float,
    length: float,
) -> float | None:
    """
    The printed r = 1 bound with its moment sums collapsed, or None when no
    collapsed form was printed for the placement.
    """
    q = as_qparam(q).q
    q1, q2 = 1.0 + q, 1.0 + q + q * q
    A, B = abs(dq_at_a), abs(dq_at_b)
    placement = MidpointPlacement(placement)
    if placement is MidpointPlacement.Q_MID:
        d = q1**3 * q2
        return length * (
            A * 3.0 * q / d + B * (-2.0 * q + q**2 + 2.0 * q**3 + q**4 + q**5) / d
        )
    if placement is MidpointPlacement.ARITH_MID:
        e = 8.0 * q1 * q2
        return length * (A * 6.0 / e + B * (4.0 * q + 4.0 * q**2 + 4.0 * q**3 - 6.0) / e)
    return None


def midpoint_bounds(
    f: FuncSpec,
    q: QLike,
    placement: MidpointPlacement,
    r: float = 1.0,
    params: BoundParams | None = None,
    policy: TruncationPolicy | None = None,
    seed: int = DEFAULT_SEED,
) -> Verdict:
    """
    ``power_mean_bound`` at the placement's x, with the printed moments
    compared against the closed forms and the series at the same s.
    """
    qp = as_qparam(q)
    placement = MidpointPlacement(placement)
    params = dataclasses.replace(params or BoundParams(), r=r)
    x = midpoint_x(placement, qp, f.interval)
    verdict = power_mean_bound(f, qp, x, params, policy, seed)

    s = midpoint_s(placement, qp)
    printed = printed_midpoint_moments(placement, qp)
    against_closed = max(
        abs(printed[k] - moment_closed_form(k, qp, s, MomentSource.CLOSED_PAPER))
        for k in _SIX_KINDS
    )
    against_series = max(
        abs(printed[k] - moment_series(k, qp, s, policy)) for k in _SIX_KINDS
    )
    diagnostics = dict(
        verdict.diagnostics,
        placement=placement.value,
        printed_vs_closed_paper=against_closed,
        printed_vs_series=against_series,
    )
    at_a = verdict.diagnostics.get("dq_at_a")
    if r == 1.0 and at_a is not None:
        diagnostics["printed_rhs_r1"] = printed_midpoint_rhs_r1(
            placement, qp, at_a, verdict.diagnostics["dq_at_b"], f.interval.length
        )
    return dataclasses.replace(
        verdict,
        inequality_id=f"midpoint_{placement.value}",
        diagnostics=diagnostics,
    )
