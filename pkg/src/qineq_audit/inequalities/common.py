# src/qineq_audit/inequalities/common.py
"""Shared types and helpers for the inequality auditors."""

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from logging import getLogger
from typing import Any

from ..config.config import DEFAULT_SEED, FUNC_CACHE_SIZE, VERDICT_TOL
from ..corpus import check_derivative_power_convexity
from ..errors import DomainError, LimitDoesNotExistError, PreconditionError
from ..moments import MomentSource
from ..montgomery import normalized_point
from ..qcalc import (
    FuncSpec,
    QParam,
    TruncationPolicy,
    integral_mean,
    q_derivative,
    q_derivative_at_left_endpoint,
)

logger = getLogger(__name__)


class Pairing(str, Enum):
    """Which endpoint derivative multiplies the first moment of each bracket."""

    AS_STATED = "as_stated"
    SWAPPED = "swapped"


class FirstFactor(str, Enum):
    """First Hölder factor over [0, s]: int qt, or int (qt)^p as the proof uses."""

    STATED_QT = "stated_qt"
    PROOF_QT_POW_P = "proof_qt_pow_p"


class ReasonCode(str, Enum):
    NONE = ""
    MALFORMED = "malformed_bound"
    HYPOTHESIS_UNMET = "hypothesis_unmet"
    NOT_CONVERGED = "not_converged"
    DISCONTINUOUS = "discontinuous"
    EVALUATION_ERROR = "evaluation_error"


@dataclass(frozen=True)
class BoundParams:
    """Exponent and variant switches of the moment-based bounds."""

    r: float = 1.0
    pairing: Pairing = Pairing.AS_STATED
    holder_first_factor: FirstFactor = FirstFactor.STATED_QT
    moment_source: MomentSource = MomentSource.SERIES
    check_hypothesis: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r >= 1.0):
            raise DomainError(f"r must be a finite number >= 1, got {self.r}")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "pairing", Pairing(self.pairing))
        object.__setattr__(
            self, "holder_first_factor", FirstFactor(self.holder_first_factor)
        )
        object.__setattr__(self, "moment_source", MomentSource(self.moment_source))

    @property
    def p(self) -> float | None:
        """Conjugate exponent 1/p + 1/r = 1, defined for r > 1."""
        return self.r / (self.r - 1.0) if self.r > 1.0 else None

    def as_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "pairing": self.pairing.value,
            "holder_first_factor": self.holder_first_factor.value,
            "moment_source": self.moment_source.value,
            "check_hypothesis": self.check_hypothesis,
        }


@dataclass(frozen=True)
class VerdictParams:
    """Where a verdict was evaluated."""

    function: str
    a: float
    b: float
    q: float | None = None
    x: float | None = None
    bound: BoundParams | None = None
    M: float | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "function": self.function,
            "a": self.a,
            "b": self.b,
            "q": self.q,
            "x": self.x,
            "bound": self.bound.as_dict() if self.bound else None,
            "M": self.M,
        }


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of one inequality check.

    ``holds`` is margin >= -1e-12 (1 + |rhs|) unless the bound is malformed,
    in which case rhs and margin are NaN and ``holds`` is False.
    """

    inequality_id: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    params: VerdictParams
    diagnostics: Mapping[str, Any] = field(default_factory=dict)
    reason_code: ReasonCode = ReasonCode.NONE

    @property
    def malformed(self) -> bool:
        return self.reason_code is ReasonCode.MALFORMED


def make_verdict(
    inequality_id: str,
    lhs: float,
    rhs: float,
    params: VerdictParams,
    diagnostics: Mapping[str, Any] | None = None,
    reason_code: ReasonCode = ReasonCode.NONE,
) -> Verdict:
    margin = rhs - lhs
    holds = margin >= -VERDICT_TOL * (1.0 + abs(rhs))
    return Verdict(
        inequality_id=inequality_id,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        holds=bool(holds),
        params=params,
        diagnostics=dict(diagnostics or {}),
        reason_code=reason_code,
    )


def unevaluated_verdict(
    inequality_id: str,
    lhs: float,
    params: VerdictParams,
    reason_code: ReasonCode,
    diagnostics: Mapping[str, Any] | None = None,
) -> Verdict:
    """A verdict whose right-hand side could not be formed."""
    return Verdict(
        inequality_id=inequality_id,
        lhs=lhs,
        rhs=math.nan,
        margin=math.nan,
        holds=False,
        params=params,
        diagnostics=dict(diagnostics or {}),
        reason_code=reason_code,
    )


class MalformedBound(Exception):
    """A fractional power of a negative quantity was requested."""

    def __init__(self, quantity: str, value: float):
        super().__init__(f"{quantity} = {value} is negative")
        self.quantity = quantity
        self.value = value


def clamp_tiny_negative(value: float, scale: float = 1.0) -> float:
    """Zero out values that are negative only by rounding."""
    if value < 0.0 and value >= -VERDICT_TOL * (1.0 + abs(scale)):
        return 0.0
    return value


def fractional_power(base: float, exponent: float, quantity: str) -> float:
    """
    base^exponent with 0^0 = 1.

    Negative bases raise ``MalformedBound`` unless the exponent is 1.
    """
    if exponent == 0.0:
        return 1.0
    if exponent == 1.0:
        return base
    base = clamp_tiny_negative(base)
    if base < 0.0:
        raise MalformedBound(quantity, base)
    return base**exponent


@dataclass(frozen=True)
class EndpointDerivatives:
    """aD_q f at a (as a limit) and at b; ``at_a`` is None if the limit fails."""

    at_a: float | None
    at_b: float
    note: str = ""


@lru_cache(maxsize=FUNC_CACHE_SIZE)
def endpoint_derivatives(f: FuncSpec, q: QParam) -> EndpointDerivatives:
    interval = f.interval
    at_b = q_derivative(f, q, interval.a, interval.b)
    try:
        at_a = q_derivative_at_left_endpoint(f, q, interval.a)
    except LimitDoesNotExistError as exc:
        logger.info(
            "Endpoint q-derivative does not exist",
            extra={"function": f.name, "q": q.q, "error": str(exc)},
        )
        return EndpointDerivatives(at_a=None, at_b=at_b, note=str(exc))
    return EndpointDerivatives(at_a=at_a, at_b=at_b)


def derivative_hypothesis(
    f: FuncSpec, q: QParam, r: float, seed: int = DEFAULT_SEED
) -> tuple[bool, dict[str, Any]]:
    """Sampled check that |aD_q f|^r is convex on (a, b]."""
    verdict = check_derivative_power_convexity(f, q, r, seed)
    return verdict.passed, {
        "convexity_worst_violation": verdict.worst_violation,
        "convexity_witness": list(verdict.witness),
    }


@dataclass(frozen=True)
class BoundContext:
    """Everything a moment-based bound needs at one point x."""

    f: FuncSpec
    q: QParam
    x: float
    s: float
    lhs: float
    params: VerdictParams
    derivatives: EndpointDerivatives | None
    diagnostics: dict[str, Any]
    reason_code: ReasonCode

    @property
    def length(self) -> float:
        return self.f.interval.length

    def endpoint_weights(self, r: float, pairing: Pairing) -> tuple[float, float]:
        """(|aD_q f(a)|^r, |aD_q f(b)|^r), exchanged for the swapped pairing."""
        if self.derivatives is None or self.derivatives.at_a is None:
            raise PreconditionError("Endpoint q-derivatives were not evaluated")
        first = abs(self.derivatives.at_a) ** r
        second = abs(self.derivatives.at_b) ** r
        if pairing is Pairing.SWAPPED:
            return second, first
        return first, second


def bound_context(
    f: FuncSpec,
    q: QParam,
    x: float,
    bound: BoundParams | None = None,
    policy: TruncationPolicy | None = None,
    seed: int = DEFAULT_SEED,
    M: float | None = None,
    with_endpoints: bool = True,
) -> BoundContext:
    """
    Evaluate the left side |f(x) - mean| and the shared hypotheses.

    The reason code is ``hypothesis_unmet`` when the endpoint q-derivative
    does not exist or the sampled convexity check of |aD_q f|^r fails, and
    ``not_converged`` when the mean's Jackson sum hit its term cap.
    """
    policy = policy or TruncationPolicy()
    s = normalized_point(f.interval, x).s
    mean, integral = integral_mean(f, q, f.interval, policy)
    lhs = abs(f.value(x) - mean)
    params = VerdictParams(
        function=f.name,
        a=f.interval.a,
        b=f.interval.b,
        q=q.q,
        x=x,
        bound=bound,
        M=M,
    )
    diagnostics: dict[str, Any] = {
        "s": s,
        "mean": mean,
        "mean_terms": integral.terms_used,
    }
    reason = ReasonCode.NONE
    if not integral.converged:
        reason = ReasonCode.NOT_CONVERGED

    derivatives = None
    if with_endpoints:
        derivatives = endpoint_derivatives(f, q)
        diagnostics.update(dq_at_a=derivatives.at_a, dq_at_b=derivatives.at_b)
        if derivatives.at_a is None:
            diagnostics["endpoint_note"] = derivatives.note
            reason = ReasonCode.HYPOTHESIS_UNMET
    unmet = reason is ReasonCode.HYPOTHESIS_UNMET
    if bound is not None and bound.check_hypothesis and not unmet:
        passed, details = derivative_hypothesis(f, q, bound.r, seed)
        diagnostics.update(details)
        if not passed:
            reason = ReasonCode.HYPOTHESIS_UNMET
    if not f.continuous:
        diagnostics["discontinuous"] = True
    return BoundContext(
        f=f,
        q=q,
        x=x,
        s=s,
        lhs=lhs,
        params=params,
        derivatives=derivatives,
        diagnostics=diagnostics,
        reason_code=reason,
    )
