# src/qineq_audit/qcalc/limits.py
"""Probing the classical limit q -> 1 of q-derivatives and q-integrals."""

from collections.abc import Sequence
from dataclasses import dataclass
from logging import getLogger

from ..config.config import INTEGRAL_LIMIT_TOL, LIMIT_TOL
from ..errors import ConfigurationError, DomainError
from .core import Interval, TruncationPolicy, as_qparam
from .funcspec import FuncSpec
from .operators import q_derivative, q_integral

logger = getLogger(__name__)

# q = 1 - 2^-k for k = 1..12
DEFAULT_Q_SCHEDULE = tuple(1.0 - 2.0**-k for k in range(1, 13))

# polynomial extrapolation in h = 1 - q over this many trailing probes
_EXTRAPOLATION_ORDER = 3


@dataclass(frozen=True)
class ConvergenceRecord:
    """Outcome of a q -> 1 probe."""

    probe_points: tuple[tuple[float, float], ...]
    extrapolated_limit: float
    reference: float
    converged: bool
    tolerance: float

    @property
    def final_deviation(self) -> float:
        return abs(self.probe_points[-1][1] - self.reference)


def extrapolate_to_classical(probes: Sequence[tuple[float, float]]) -> float:
    """
    Neville extrapolation to h = 1 - q = 0 over the trailing probes.

    With two probes this is the linear Richardson step
    L = (h1 v2 - h2 v1) / (h1 - h2).
    """
    tail = list(probes)[-_EXTRAPOLATION_ORDER:]
    hs = [1.0 - q for q, _ in tail]
    table = [v for _, v in tail]
    for level in range(1, len(tail)):
        for i in range(len(tail) - 1, level - 1, -1):
            h_far, h_near = hs[i - level], hs[i]
            table[i] = (h_far * table[i] - h_near * table[i - 1]) / (h_far - h_near)
    return table[-1]


def _validate_schedule(q_schedule: Sequence[float]) -> tuple[float, ...]:
    schedule = tuple(as_qparam(q).q for q in q_schedule)
    if not schedule:
        raise DomainError("q schedule must not be empty")
    if len(set(schedule)) != len(schedule):
        raise DomainError("q schedule must not repeat values")
    return schedule


def classical_limit_probe_derivative(
    f: FuncSpec,
    a: float,
    t: float,
    q_schedule: Sequence[float] = DEFAULT_Q_SCHEDULE,
    tol: float = LIMIT_TOL,
) -> ConvergenceRecord:
    """Compare the q-derivative at ``t`` against the classical derivative as q -> 1."""
    if f.classical_derivative is None:
        raise ConfigurationError(f"{f.name} has no classical derivative")
    schedule = _validate_schedule(q_schedule)
    probes = tuple((q, float(q_derivative(f, q, a, t))) for q in schedule)
    reference = float(f.classical_derivative(t))
    limit = extrapolate_to_classical(probes)
    converged = abs(limit - reference) <= tol * (1.0 + abs(reference))
    logger.debug(
        "Derivative limit probe",
        extra={"function": f.name, "limit": limit, "reference": reference},
    )
    return ConvergenceRecord(probes, limit, reference, converged, tol)


def classical_limit_probe_integral(
    f: FuncSpec,
    interval: Interval | None = None,
    q_schedule: Sequence[float] = DEFAULT_Q_SCHEDULE,
    reference: float | None = None,
    policy: TruncationPolicy | None = None,
    tol: float = INTEGRAL_LIMIT_TOL,
) -> ConvergenceRecord:
    """
    Compare Jackson integrals against the classical integral as q -> 1.

    The reference defaults to the primitive of ``f``. The probe converges
    when every Jackson sum converged and both the last probe and the
    extrapolated limit lie within ``tol * (1 + |reference|)``.
    """
    interval = interval or f.interval
    if reference is None:
        if f.primitive is None:
            raise ConfigurationError(f"{f.name} has no primitive and no reference")
        reference = float(f.primitive(interval.b)) - float(f.primitive(interval.a))
    schedule = _validate_schedule(q_schedule)

    results = [q_integral(f, q, interval, policy) for q in schedule]
    probes = tuple((q, r.value) for q, r in zip(schedule, results))
    limit = extrapolate_to_classical(probes)
    allowed = tol * (1.0 + abs(reference))
    converged = (
        all(r.converged for r in results)
        and abs(probes[-1][1] - reference) <= allowed
        and abs(limit - reference) <= allowed
    )
    logger.debug(
        "Integral limit probe",
        extra={"function": f.name, "limit": limit, "reference": reference},
    )
    return ConvergenceRecord(probes, limit, reference, converged, tol)
