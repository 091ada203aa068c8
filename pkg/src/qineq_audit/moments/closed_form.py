# src/qineq_audit/moments/closed_form.py
"""Closed-form moments as printed, and with the corrected K4."""

from ..errors import DomainError, PreconditionError, UnsupportedKindError
from ..qcalc import QLike, as_qparam
from .kinds import MomentKind, MomentSource


def _check_s(s: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")


def moment_closed_form(
    kind: MomentKind,
    q: QLike,
    s: float,
    variant: MomentSource = MomentSource.CLOSED_PAPER,
) -> float:
    """
    Closed-form value of ``kind`` at s = (x - a)/(b - a).

    ``closed_paper`` reproduces the published table, including its K4
    q(1 - s)^2/(1 + q) (and so K6), which disagrees with the Jackson integral
    whenever s is not 1. ``closed_corrected`` replaces K4 by
    (1 - s)(1 - qs)/(1 + q); every other kind is shared.

    Raises
    ------
    UnsupportedKindError
        For the Hölder kinds, which only have a series value.
    """
    kind, variant = MomentKind(kind), MomentSource(variant)
    if variant is MomentSource.SERIES:
        raise PreconditionError("moment_closed_form needs a closed variant")
    if kind.is_parametric:
        raise UnsupportedKindError(f"{kind.value} has no closed form")
    _check_s(s)
    q = as_qparam(q).q
    u = 1.0 - s
    q1, q2 = 1.0 + q, 1.0 + q + q * q

    k1 = q * s**2 / q1
    k2 = q * s**3 / q2
    if variant is MomentSource.CLOSED_PAPER:
        k4 = q * u**2 / q1
    else:
        k4 = u * (1.0 - q + q * u) / q1
    k5 = 1.0 / (q1 * q2) - s**2 / q1 + q * s**3 / q2

    values = {
        MomentKind.K1: k1,
        MomentKind.K2: k2,
        MomentKind.K3: k1 - k2,
        MomentKind.K4: k4,
        MomentKind.K5: k5,
        MomentKind.K6: k4 - k5,
        MomentKind.M_T_LOWER: s**2 / q1,
        MomentKind.M_1MT_LOWER: s - s**2 / q1,
        MomentKind.M_T_UPPER: (1.0 - s**2) / q1,
        MomentKind.M_1MT_UPPER: q / q1 - s + s**2 / q1,
    }
    return values[kind]
