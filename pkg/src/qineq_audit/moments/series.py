# src/qineq_audit/moments/series.py
"""Moments as Jackson sums, and assembled moment sets."""

from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from logging import getLogger

import numpy as np

from ..errors import DomainError
from ..qcalc import QLike, QParam, SeriesResult, TruncationPolicy, as_qparam, jackson_sum
from .closed_form import moment_closed_form
from .kinds import FIXED_KINDS, MomentKind, MomentSource, integrand

logger = getLogger(__name__)


def _lower(g, q: QParam, s: float, policy: TruncationPolicy) -> SeriesResult:
    """int_0^s g(t) d_q t = s (1 - q) sum_n q^n g(q^n s)."""
    return jackson_sum(lambda n: g(np.power(q.q, n) * s), q, scale=s, policy=policy)


@lru_cache(maxsize=4096)
def _moment_series_cached(
    kind: MomentKind, q: QParam, s: float, policy: TruncationPolicy, p: float | None
) -> SeriesResult:
    g = integrand(kind, q.q, p)
    if not kind.is_upper:
        return _lower(g, q, s, policy)
    # int_s^1 = int_0^1 - int_0^s
    whole = _lower(g, q, 1.0, policy)
    if s == 0.0:
        return whole
    return whole - _lower(g, q, s, policy)


def moment_series_result(
    kind: MomentKind,
    q: QLike,
    s: float,
    policy: TruncationPolicy | None = None,
    p: float | None = None,
) -> SeriesResult:
    """Series value of ``kind`` at ``s`` with truncation diagnostics."""
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    kind = MomentKind(kind)
    result = _moment_series_cached(
        kind,
        as_qparam(q),
        float(s),
        policy or TruncationPolicy(),
        float(p) if kind.is_parametric and p is not None else None,
    )
    if not result.converged:
        logger.warning(
            "Moment series not converged",
            extra={"kind": kind.value, "q": float(as_qparam(q)), "s": s},
        )
    return result


def moment_series(
    kind: MomentKind,
    q: QLike,
    s: float,
    policy: TruncationPolicy | None = None,
    p: float | None = None,
) -> float:
    """Series value of ``kind`` at s = (x - a)/(b - a)."""
    return moment_series_result(kind, q, s, policy, p).value


@dataclass(frozen=True)
class MomentSet:
    """One value per moment kind, each tagged with the source it came from."""

    q: float
    s: float
    source: MomentSource
    values: Mapping[MomentKind, float]
    sources: Mapping[MomentKind, MomentSource]
    p: float | None = None

    def __getitem__(self, kind: MomentKind) -> float:
        return self.values[MomentKind(kind)]


@lru_cache(maxsize=4096)
def moment_set(
    q: QParam,
    s: float,
    source: MomentSource = MomentSource.SERIES,
    policy: TruncationPolicy | None = None,
    p: float | None = None,
) -> MomentSet:
    """
    Every fixed moment kind at ``s`` from ``source``.

    K3 is always K1 - K2 and K6 always K4 - K5 of the same source. The Hölder
    kinds are included when ``p`` is given and always come from the series.
    """
    q, source = as_qparam(q), MomentSource(source)
    policy = policy or TruncationPolicy()
    values: dict[MomentKind, float] = {}
    sources: dict[MomentKind, MomentSource] = {}
    for kind in FIXED_KINDS:
        if kind in (MomentKind.K3, MomentKind.K6):
            continue
        if source is MomentSource.SERIES:
            values[kind] = moment_series(kind, q, s, policy)
        else:
            values[kind] = moment_closed_form(kind, q, s, source)
        sources[kind] = source
    values[MomentKind.K3] = values[MomentKind.K1] - values[MomentKind.K2]
    values[MomentKind.K6] = values[MomentKind.K4] - values[MomentKind.K5]
    sources[MomentKind.K3] = sources[MomentKind.K6] = source
    if p is not None:
        for kind in (MomentKind.HOLDER_UPPER, MomentKind.HOLDER_LOWER):
            values[kind] = moment_series(kind, q, s, policy, p)
            sources[kind] = MomentSource.SERIES
    return MomentSet(q=q.q, s=s, source=source, values=values, sources=sources, p=p)
