# src/qineq_audit/moments/audit.py
"""Comparing closed-form moments against their Jackson series."""

from dataclasses import dataclass
from logging import getLogger

from ..config.config import MOMENT_FLAG_TOL
from ..errors import DomainError
from ..qcalc import QLike, TruncationPolicy, as_qparam
from .closed_form import moment_closed_form
from .kinds import FIXED_KINDS, PARAMETRIC_KINDS, MomentKind, MomentSource
from .series import moment_series_result

logger = getLogger(__name__)


def deviates(closed: float, series: float, tol: float = MOMENT_FLAG_TOL) -> bool:
    return abs(closed - series) > tol * (1.0 + abs(series))


@dataclass(frozen=True)
class MomentAuditEntry:
    kind: MomentKind
    series: float
    converged: bool
    closed_paper: float | None = None
    closed_corrected: float | None = None

    @property
    def printed_deviation(self) -> float | None:
        if self.closed_paper is None:
            return None
        return self.closed_paper - self.series

    @property
    def corrected_deviation(self) -> float | None:
        if self.closed_corrected is None:
            return None
        return self.closed_corrected - self.series

    @property
    def flagged(self) -> bool:
        """The printed closed form disagrees with the series."""
        return self.closed_paper is not None and deviates(self.closed_paper, self.series)


@dataclass(frozen=True)
class MomentAuditReport:
    q: float
    s: float
    p: float | None
    entries: tuple[MomentAuditEntry, ...]

    @property
    def flagged_kinds(self) -> tuple[MomentKind, ...]:
        return tuple(entry.kind for entry in self.entries if entry.flagged)

    def entry(self, kind: MomentKind) -> MomentAuditEntry:
        kind = MomentKind(kind)
        for entry in self.entries:
            if entry.kind is kind:
                return entry
        raise KeyError(kind)


def audit_moments(
    q: QLike,
    s: float,
    policy: TruncationPolicy | None = None,
    p: float | None = None,
) -> MomentAuditReport:
    """
    Compute every moment kind at ``s`` by series and by both closed forms.

    A kind is flagged when its printed closed form deviates from the series
    by more than 1e-8 (1 + |series|). The Hölder kinds are reported by series
    alone and only when ``p`` is given.

    Examples
    --------
    At q = 0.5, s = 0.5 exactly K4 and K6 are flagged.
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    qp = as_qparam(q)
    entries = []
    for kind in FIXED_KINDS:
        series = moment_series_result(kind, qp, s, policy)
        entries.append(
            MomentAuditEntry(
                kind=kind,
                series=series.value,
                converged=series.converged,
                closed_paper=moment_closed_form(kind, qp, s, MomentSource.CLOSED_PAPER),
                closed_corrected=moment_closed_form(
                    kind, qp, s, MomentSource.CLOSED_CORRECTED
                ),
            )
        )
    if p is not None:
        for kind in sorted(PARAMETRIC_KINDS, key=lambda k: k.value):
            series = moment_series_result(kind, qp, s, policy, p)
            entries.append(
                MomentAuditEntry(kind=kind, series=series.value, converged=series.converged)
            )

    report = MomentAuditReport(q=qp.q, s=s, p=p, entries=tuple(entries))
    if report.flagged_kinds:
        logger.info(
            "Closed-form moments disagree with series",
            extra={"q": qp.q, "s": s, "kinds": [k.value for k in report.flagged_kinds]},
        )
    return report
