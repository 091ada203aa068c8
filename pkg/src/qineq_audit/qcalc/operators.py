# src/qineq_audit/qcalc/operators.py
"""The left q-derivative and the Jackson q-integral on [a, b]."""

from dataclasses import dataclass
from functools import lru_cache
from logging import getLogger

import numpy as np

from ..config.config import (
    CLASSICAL_PROXY_EPS_REL,
    CLASSICAL_PROXY_N_MAX,
    CLASSICAL_PROXY_Q,
    ENDPOINT_CAUCHY_TOL,
    ENDPOINT_PROBES,
    ENDPOINT_STEP_SCALE,
    FUNC_CACHE_SIZE,
)
from ..errors import (
    DomainError,
    EvaluationError,
    LimitDoesNotExistError,
    PreconditionError,
)
from .core import (
    Interval,
    QLike,
    QParam,
    SeriesResult,
    TruncationPolicy,
    as_qparam,
    jackson_nodes,
    jackson_sum,
)
from .funcspec import FuncSpec

logger = getLogger(__name__)

CLASSICAL_PROXY = QParam(CLASSICAL_PROXY_Q)
CLASSICAL_POLICY = TruncationPolicy(
    eps_rel=CLASSICAL_PROXY_EPS_REL, n_max=CLASSICAL_PROXY_N_MAX
)

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QIntegralResult(SeriesResult):
    """A Jackson integral over ``interval`` with its truncation diagnostics."""

    q: float = float("nan")
    interval: Interval | None = None

    @classmethod
    def from_series(
        cls, series: SeriesResult, q: QParam, interval: Interval
    ) -> "QIntegralResult":
        return cls(
            value=series.value,
            terms_used=series.terms_used,
            tail_estimate=series.tail_estimate,
            converged=series.converged,
            q=q.q,
            interval=interval,
        )


def q_difference_quotient(
    f: FuncSpec, q: float, a: float, t: np.ndarray
) -> np.ndarray:
    """
    Unchecked vectorised [f(t) - f(qt + (1-q)a)] / ((1-q)(t-a)).

    Points with t == a come back as NaN so a Jackson sum stops on them.
    """
    w = q * t + (1.0 - q) * a
    with np.errstate(all="ignore"):
        numerator = np.asarray(f.eval(t), dtype=float) - np.asarray(
            f.eval(w), dtype=float
        )
        return numerator / ((1.0 - q) * (t - a))


def _check_left_endpoint(f: FuncSpec, a: float) -> None:
    if not f.interval.a <= a < f.interval.b:
        raise DomainError(
            f"Left endpoint {a} outside the domain of {f.name} {f.interval}"
        )


def q_derivative(f: FuncSpec, q: QLike, a: float, t):
    """
    Left q-derivative of ``f`` based at ``a``, at t in (a, b].

    Accepts a scalar or an array of points and returns the same shape.

    Raises
    ------
    PreconditionError
        If a point equals ``a``; use ``q_derivative_at_left_endpoint``.
    DomainError
        If a point lies outside (a, b].
    EvaluationError
        If f is not finite at a point or its q-shifted image.
    """
    qv = as_qparam(q).q
    _check_left_endpoint(f, a)
    points = np.asarray(t, dtype=float)
    if np.any(points == a):
        raise PreconditionError(
            "q-derivative at the left endpoint needs q_derivative_at_left_endpoint"
        )
    if np.any((points < a) | (points > f.interval.b)):
        raise DomainError(f"q-derivative point outside ({a}, {f.interval.b}]")

    values = q_difference_quotient(f, qv, a, points)
    bad = ~np.isfinite(values)
    if bad.any():
        node = float(points.ravel()[np.argmax(bad.ravel())])
        raise EvaluationError(
            f"{f.name} is not finite near node {node}", node=node
        )
    return float(values) if values.ndim == 0 else values


def q_derivative_at_left_endpoint(
    f: FuncSpec,
    q: QLike,
    a: float | None = None,
    step_scale: float = ENDPOINT_STEP_SCALE,
    probes: int = ENDPOINT_PROBES,
    tol: float = ENDPOINT_CAUCHY_TOL,
) -> float:
    """
    Limit of the q-derivative as t -> a+.

    The q-derivative is probed at t_k = a + (b - a) step_scale^k and the
    sequence is Richardson-extrapolated assuming a leading error linear in
    t - a. The first pair of consecutive extrapolants that agree within
    ``tol * (1 + |R|)`` plus a rounding allowance for the difference
    quotient is accepted.

    Raises
    ------
    LimitDoesNotExistError
        If no pair of extrapolants agrees.
    """
    qv = as_qparam(q).q
    a = f.interval.a if a is None else float(a)
    _check_left_endpoint(f, a)
    if not 0.0 < step_scale < 1.0:
        raise DomainError(f"step_scale must lie in (0, 1), got {step_scale}")

    span = f.interval.b - a
    t = a + span * np.power(step_scale, np.arange(1, probes + 1))
    t = t[t > a]
    if t.size < 3:
        raise LimitDoesNotExistError(f"Too few probes to approach {a} for {f.name}")

    values = q_difference_quotient(f, qv, a, t)
    f_t = np.abs(np.asarray(f.eval(t), dtype=float))
    f_w = np.abs(np.asarray(f.eval(qv * t + (1.0 - qv) * a), dtype=float))
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(f_t + f_w))):
        raise EvaluationError(f"{f.name} is not finite near {a}", node=a)

    # R_k removes the error term linear in (t_k - a)
    extrapolated = (values[1:] - step_scale * values[:-1]) / (1.0 - step_scale)
    rounding = 8.0 * _EPS * (f_t + f_w) / ((1.0 - qv) * (t - a))
    allowance = rounding[1:] * (1.0 + step_scale) / (1.0 - step_scale)

    for k in range(1, extrapolated.size):
        current, previous = extrapolated[k], extrapolated[k - 1]
        if abs(current - previous) <= tol * (1.0 + abs(current)) + allowance[k]:
            logger.debug(
                "Endpoint q-derivative settled",
                extra={"function": f.name, "q": qv, "probe": k + 1},
            )
            return float(current)

    raise LimitDoesNotExistError(
        f"q-derivative of {f.name} at {a} does not settle (q={qv})"
    )


def q_integral(
    f: FuncSpec,
    q: QLike,
    interval: Interval | None = None,
    policy: TruncationPolicy | None = None,
) -> QIntegralResult:
    """
    Jackson integral of ``f`` over [a, b]:

        (1 - q)(b - a) sum_n q^n f(q^n b + (1 - q^n) a)
    """
    qp = as_qparam(q)
    interval = interval or f.interval
    if not (f.interval.a <= interval.a and interval.b <= f.interval.b):
        raise DomainError(f"{interval} is not inside the domain {f.interval}")

    def term(n: np.ndarray) -> np.ndarray:
        return f.eval(jackson_nodes(n, qp, interval.a, interval.b))

    series = jackson_sum(term, qp, scale=interval.length, policy=policy)
    if not series.converged:
        logger.warning(
            "Jackson integral not converged",
            extra={"function": f.name, "q": qp.q, "terms": series.terms_used},
        )
    return QIntegralResult.from_series(series, qp, interval)


def q_integral_between(
    f: FuncSpec,
    q: QLike,
    a: float,
    c: float,
    b: float,
    policy: TruncationPolicy | None = None,
) -> float:
    """Integral over [c, b] as the difference of Jackson integrals from a."""
    if not a <= c <= b:
        raise DomainError(f"q_integral_between needs a <= c <= b, got {a}, {c}, {b}")
    full = q_integral(f, q, Interval(a, b), policy).value
    if c == a:
        return full
    return full - q_integral(f, q, Interval(a, c), policy).value


@lru_cache(maxsize=FUNC_CACHE_SIZE)
def integral_mean(
    f: FuncSpec,
    q: QParam,
    interval: Interval,
    policy: TruncationPolicy,
) -> tuple[float, QIntegralResult]:
    """Cached q-integral mean over ``interval`` and its diagnostics."""
    result = q_integral(f, q, interval, policy)
    return result.value / interval.length, result


def classical_proxy_mean(
    f: FuncSpec, interval: Interval | None = None
) -> tuple[float, QIntegralResult]:
    """Mean of f approximated by a Jackson integral with q = 1 - 1e-6."""
    return integral_mean(f, CLASSICAL_PROXY, interval or f.interval, CLASSICAL_POLICY)
