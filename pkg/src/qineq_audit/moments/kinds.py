# src/qineq_audit/moments/kinds.py
"""Moment kinds and their integrands on the unit interval."""

from collections.abc import Callable
from enum import Enum

import numpy as np

from ..errors import DomainError, PreconditionError


class MomentKind(str, Enum):
    """
    Weighted q-integrals over [0, s] (lower) or [s, 1] (upper).

    ======================  ================  =========
    kind                    integrand         range
    ======================  ================  =========
    K1                      qt                [0, s]
    K2                      qt^2              [0, s]
    K3                      qt - qt^2         [0, s]
    K4                      1 - qt            [s, 1]
    K5                      t - qt^2          [s, 1]
    K6                      (1 - qt)(1 - t)   [s, 1]
    M_T_LOWER               t                 [0, s]
    M_1MT_LOWER             1 - t             [0, s]
    M_T_UPPER               t                 [s, 1]
    M_1MT_UPPER             1 - t             [s, 1]
    HOLDER_UPPER            (1 - qt)^p        [s, 1]
    HOLDER_LOWER            (qt)^p            [0, s]
    ======================  ================  =========
    """

    K1 = "K1"
    K2 = "K2"
    K3 = "K3"
    K4 = "K4"
    K5 = "K5"
    K6 = "K6"
    M_T_LOWER = "M_T_LOWER"
    M_1MT_LOWER = "M_1MT_LOWER"
    M_T_UPPER = "M_T_UPPER"
    M_1MT_UPPER = "M_1MT_UPPER"
    HOLDER_UPPER = "HOLDER_UPPER"
    HOLDER_LOWER = "HOLDER_LOWER"

    @property
    def is_upper(self) -> bool:
        return self in _UPPER

    @property
    def is_parametric(self) -> bool:
        return self in PARAMETRIC_KINDS


class MomentSource(str, Enum):
    SERIES = "series"
    CLOSED_PAPER = "closed_paper"
    CLOSED_CORRECTED = "closed_corrected"


_UPPER = frozenset(
    {
        MomentKind.K4,
        MomentKind.K5,
        MomentKind.K6,
        MomentKind.M_T_UPPER,
        MomentKind.M_1MT_UPPER,
        MomentKind.HOLDER_UPPER,
    }
)
PARAMETRIC_KINDS = frozenset({MomentKind.HOLDER_UPPER, MomentKind.HOLDER_LOWER})
FIXED_KINDS = tuple(k for k in MomentKind if k not in PARAMETRIC_KINDS)


def integrand(
    kind: MomentKind, q: float, p: float | None = None
) -> Callable[[np.ndarray], np.ndarray]:
    """Integrand g of ``kind``; parametric kinds need the exponent ``p``."""
    kind = MomentKind(kind)
    if kind.is_parametric:
        if p is None:
            raise PreconditionError(f"{kind.value} needs an exponent p")
        if not p >= 1.0:
            raise DomainError(f"Exponent p must be at least 1, got {p}")
    integrands = {
        MomentKind.K1: lambda t: q * t,
        MomentKind.K2: lambda t: q * t**2,
        MomentKind.K3: lambda t: q * t - q * t**2,
        MomentKind.K4: lambda t: 1.0 - q * t,
        MomentKind.K5: lambda t: t - q * t**2,
        MomentKind.K6: lambda t: (1.0 - q * t) * (1.0 - t),
        MomentKind.M_T_LOWER: lambda t: t,
        MomentKind.M_1MT_LOWER: lambda t: 1.0 - t,
        MomentKind.M_T_UPPER: lambda t: t,
        MomentKind.M_1MT_UPPER: lambda t: 1.0 - t,
        MomentKind.HOLDER_UPPER: lambda t: np.abs(1.0 - q * t) ** p,
        MomentKind.HOLDER_LOWER: lambda t: (q * t) ** p,
    }
    return integrands[kind]
