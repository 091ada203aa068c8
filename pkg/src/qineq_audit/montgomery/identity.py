# src/qineq_audit/montgomery/identity.py
"""
The quantum Montgomery identity

    f(x) - (1/(b-a)) int_a^b f(t) d_q^a t
        = (b - a) int_0^1 K_s(t) aD_q f(tb + (1-t)a) d_q t

with s = (x - a)/(b - a) and the kernel K_s(t) = qt on [0, s], qt - 1 on (s, 1].

The right-hand side admits two Jackson readings:

* ``formal_split`` splits the kernel integral at s before summing, so the
  part over [0, s] is a Jackson integral with its own nodes q^n s. This
  reading is exact at every x for f continuous at a.
* ``pointwise`` plugs the piecewise kernel into a single Jackson sum over the
  nodes q^n. It telescopes to f(x_N) - mean, with x_N the largest node not
  above x, so it is exact only when s is 0 or a power of q.
"""

import math
from dataclasses import dataclass
from enum import Enum
from logging import getLogger

import numpy as np

from ..config.config import NODE_ALIGNMENT_TOL
from ..errors import DomainError, EvaluationError
from ..qcalc import (
    FuncSpec,
    Interval,
    QIntegralResult,
    QLike,
    QParam,
    SeriesResult,
    TruncationPolicy,
    as_qparam,
    integral_mean,
    jackson_sum,
    q_difference_quotient,
)

logger = getLogger(__name__)


class KernelReading(str, Enum):
    FORMAL_SPLIT = "formal_split"
    POINTWISE = "pointwise"


@dataclass(frozen=True)
class NormalizedPoint:
    """Position of x in [a, b] as s = (x-a)/(b-a) and u = 1 - s."""

    s: float
    u: float


def normalized_point(interval: Interval, x: float) -> NormalizedPoint:
    if not interval.contains(x):
        raise DomainError(f"x = {x} outside {interval}")
    s = min(max((x - interval.a) / interval.length, 0.0), 1.0)
    return NormalizedPoint(s=s, u=1.0 - s)


def node_exponent(s: float, q: QLike) -> int | None:
    """Exponent n with q^n == s (within tolerance), or None when s is off-node."""
    qv = as_qparam(q).q
    if s <= 0.0:
        return None
    n = round(math.log(s) / math.log(qv))
    if n >= 0 and abs(qv**n - s) <= NODE_ALIGNMENT_TOL * s:
        return n
    return None


def is_node_aligned(s: float, q: QLike) -> bool:
    """True when s is 0 or a power of q, where the pointwise reading is exact."""
    return s == 0.0 or node_exponent(s, q) is not None


def snap_to_node(s: float, q: QLike) -> float:
    """Replace s by the power of q it rounds to, if any."""
    n = node_exponent(s, q)
    return as_qparam(q).q ** n if n is not None else s


def kernel(t, s: float, q: QLike):
    """K_s(t) = qt for t <= s, qt - 1 otherwise. Vectorised over t."""
    qv = as_qparam(q).q
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    points = np.asarray(t, dtype=float)
    values = np.where(points <= s, qv * points, qv * points - 1.0)
    return float(values) if values.ndim == 0 else values


@dataclass(frozen=True)
class IdentitySides:
    """Both sides of the Montgomery identity at one point."""

    lhs: float
    rhs: float
    residual: float
    diagnostics: tuple[QIntegralResult, SeriesResult]
    reading: KernelReading


class _DerivativeAlongUnit:
    """aD_q f evaluated at tb + (1-t)a for t in (0, 1]."""

    def __init__(self, f: FuncSpec, q: QParam, interval: Interval):
        self.f = f
        self.q = q.q
        self.interval = interval

    def __call__(self, t: np.ndarray) -> np.ndarray:
        a, b = self.interval.a, self.interval.b
        points = t * b + (1.0 - t) * a
        values = q_difference_quotient(self.f, self.q, a, points)
        # points that rounded onto a are left as NaN for the summation to stop on
        bad = ~np.isfinite(values) & (points > a)
        if bad.any():
            node = float(points[np.argmax(bad)])
            raise EvaluationError(
                f"q-derivative of {self.f.name} is not finite at node {node}",
                node=node,
            )
        return values


def _formal_split_series(
    derivative: _DerivativeAlongUnit,
    q: QParam,
    s: float,
    policy: TruncationPolicy | None,
    absolute: bool = False,
) -> SeriesResult:
    """int_0^1 (qt - 1) D(t) d_qt + int_0^s D(t) d_qt, optionally of absolute values."""
    qv = q.q
    wrap = np.abs if absolute else (lambda v: v)

    def upper_term(n: np.ndarray) -> np.ndarray:
        t = np.power(qv, n)
        return wrap(qv * t - 1.0) * wrap(derivative(t))

    def lower_term(n: np.ndarray) -> np.ndarray:
        return wrap(derivative(np.power(qv, n) * s))

    whole = jackson_sum(upper_term, q, 1.0, policy)
    if s == 0.0:
        return whole
    return whole + jackson_sum(lower_term, q, s, policy)


def _pointwise_series(
    derivative: _DerivativeAlongUnit,
    q: QParam,
    s: float,
    policy: TruncationPolicy | None,
    absolute: bool = False,
) -> SeriesResult:
    """Single Jackson sum of K_s(q^n) D(q^n), optionally of absolute values."""
    qv = q.q

    def term(n: np.ndarray) -> np.ndarray:
        t = np.power(qv, n)
        values = kernel(t, s, q) * derivative(t)
        return np.abs(values) if absolute else values

    return jackson_sum(term, q, 1.0, policy)


def kernel_series(
    f: FuncSpec,
    q: QLike,
    x: float,
    interval: Interval | None = None,
    policy: TruncationPolicy | None = None,
    reading: KernelReading = KernelReading.FORMAL_SPLIT,
    absolute: bool = False,
) -> SeriesResult:
    """
    The kernel integral int_0^1 K_s(t) aD_q f(tb + (1-t)a) d_q t under
    ``reading``, without the (b - a) factor. With ``absolute`` every
    coefficient and derivative value enters by modulus.
    """
    qp = as_qparam(q)
    interval = interval or f.interval
    s = snap_to_node(normalized_point(interval, x).s, qp)
    derivative = _DerivativeAlongUnit(f, qp, interval)
    if KernelReading(reading) is KernelReading.POINTWISE:
        return _pointwise_series(derivative, qp, s, policy, absolute)
    return _formal_split_series(derivative, qp, s, policy, absolute)


def identity_sides(
    f: FuncSpec,
    q: QLike,
    x: float,
    interval: Interval | None = None,
    policy: TruncationPolicy | None = None,
    reading: KernelReading = KernelReading.FORMAL_SPLIT,
) -> IdentitySides:
    """
    Evaluate both sides of the Montgomery identity at ``x``.

    Raises
    ------
    EvaluationError
        If a q-derivative value at a visited node is not finite.

    Examples
    --------
    For f(t) = t on [0, 1] at x = 1/4 with q = 1/2 both sides equal -5/12.
    """
    qp = as_qparam(q)
    interval = interval or f.interval
    policy = policy or TruncationPolicy()
    reading = KernelReading(reading)
    normalized_point(interval, x)

    mean, integral = integral_mean(f, qp, interval, policy)
    lhs = f.value(x) - mean
    series = kernel_series(f, qp, x, interval, policy, reading)
    rhs = interval.length * series.value
    logger.debug(
        "Montgomery identity evaluated",
        extra={"function": f.name, "q": qp.q, "x": x, "reading": reading.value},
    )
    return IdentitySides(
        lhs=lhs,
        rhs=rhs,
        residual=lhs - rhs,
        diagnostics=(integral, series),
        reading=reading,
    )

