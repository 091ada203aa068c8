# src/qineq_audit/qcalc/core.py
"""Numeric types, q-analog helpers and the Jackson summation engine."""

import math
from collections.abc import Callable
from dataclasses import dataclass
from logging import getLogger

import numpy as np

from ..config.config import DEFAULT_EPS_REL, DEFAULT_N_MAX, TAIL_LOG_SPAN, TAIL_WINDOW
from ..errors import DomainError, EvaluationError

logger = getLogger(__name__)

# Terms are evaluated in blocks that double up to this size, or to the tail window
_FIRST_BLOCK = 64
_MAX_BLOCK = 65_536

TermFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QParam:
    """The base q of every Jackson sum, strictly between 0 and 1."""

    q: float

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, (int, float)):
            raise DomainError(f"q must be a real number, got {self.q!r}")
        if not math.isfinite(self.q) or not 0.0 < self.q < 1.0:
            raise DomainError(f"q must satisfy 0 < q < 1, got {self.q}")
        object.__setattr__(self, "q", float(self.q))

    def __float__(self) -> float:
        return self.q


QLike = QParam | float


def as_qparam(q: QLike) -> QParam:
    """Coerce a float (or an existing QParam) into a QParam."""
    return q if isinstance(q, QParam) else QParam(q)


@dataclass(frozen=True)
class Interval:
    """A closed interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"Interval endpoints must be finite, got [{a}, {b}]")
        if not a < b:
            raise DomainError(f"Interval requires a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b

    def grid(self, size: int) -> list[float]:
        """Uniform grid of ``size`` points including both endpoints."""
        if size < 2:
            raise DomainError(f"grid size must be at least 2, got {size}")
        return [self.a + k * self.length / (size - 1) for k in range(size - 1)] + [
            self.b
        ]


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for Jackson sums."""

    eps_rel: float = DEFAULT_EPS_REL
    n_max: int = DEFAULT_N_MAX

    def __post_init__(self):
        if not (math.isfinite(self.eps_rel) and self.eps_rel > 0):
            raise DomainError(f"eps_rel must be positive, got {self.eps_rel}")
        if isinstance(self.n_max, bool) or not isinstance(self.n_max, int):
            raise DomainError(f"n_max must be an integer, got {self.n_max!r}")
        if self.n_max < 1:
            raise DomainError(f"n_max must be at least 1, got {self.n_max}")


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series with convergence diagnostics."""

    value: float
    terms_used: int
    tail_estimate: float
    converged: bool

    def __sub__(self, other: "SeriesResult") -> "SeriesResult":
        return SeriesResult(
            value=self.value - other.value,
            terms_used=self.terms_used + other.terms_used,
            tail_estimate=self.tail_estimate + other.tail_estimate,
            converged=self.converged and other.converged,
        )

    def __add__(self, other: "SeriesResult") -> "SeriesResult":
        return SeriesResult(
            value=self.value + other.value,
            terms_used=self.terms_used + other.terms_used,
            tail_estimate=self.tail_estimate + other.tail_estimate,
            converged=self.converged and other.converged,
        )


def q_bracket(n: int, q: QLike) -> float:
    """
    The q-number [n]_q = (1 - q^n) / (1 - q) = 1 + q + ... + q^(n-1).

    Examples
    --------
    >>> q_bracket(3, 0.5)
    1.75
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"q_bracket needs an integer n >= 1, got {n!r}")
    qv = as_qparam(q).q
    return (1.0 - qv**n) / (1.0 - qv)


def jackson_nodes(
    n: np.ndarray | int, q: QLike, a: float, b: float
) -> np.ndarray | float:
    """Jackson nodes q^n b + (1 - q^n) a, accumulating at a."""
    qn = np.power(as_qparam(q).q, n)
    return qn * b + (1.0 - qn) * a


def tail_window(q: QLike) -> int:
    """
    Number of trailing terms the stopping rule looks back over.

    The window spans ``TAIL_LOG_SPAN`` e-folds of q^n, so it covers the same
    stretch of nodes (in distance to a) whatever q is, and never fewer than
    ``TAIL_WINDOW`` terms.

    Examples
    --------
    >>> tail_window(0.5)
    8
    >>> tail_window(0.999)
    1000
    """
    qv = as_qparam(q).q
    return max(TAIL_WINDOW, math.ceil(TAIL_LOG_SPAN / -math.log(qv)))


def _sliding_max(values: np.ndarray, width: int) -> np.ndarray:
    """Maximum over every run of ``width`` consecutive values, in linear time."""
    count = values.size - width + 1
    pad = -values.size % width
    blocks = np.concatenate([values, np.full(pad, -np.inf)]).reshape(-1, width)
    prefix = np.maximum.accumulate(blocks, axis=1).ravel()
    suffix = np.maximum.accumulate(blocks[:, ::-1], axis=1)[:, ::-1].ravel()
    return np.maximum(suffix[:count], prefix[width - 1 : width - 1 + count])


def jackson_sum(
    term: TermFunction,
    q: QLike,
    scale: float = 1.0,
    policy: TruncationPolicy | None = None,
) -> SeriesResult:
    """
    Compute scale * (1 - q) * sum_{n >= 0} q^n term(n).

    ``term`` receives an integer index array and must return an array of the
    same shape (a scalar result is broadcast). Summation stops at the first
    index n with a full window of ``tail_window(q)`` terms for which the
    geometric tail bound

        |scale| * max(|term| over the window ending at n) * q^(n+1)

    drops below ``eps_rel * (1 + |partial|)``. For q close to 1 the window
    grows like 1 / (1 - q), so a zero of the integrand crossed by a handful
    of nearly coincident nodes cannot end the sum early.

    Raises
    ------
    EvaluationError
        If any term is not finite; ``index`` names the first offending index.
    """
    qv = as_qparam(q).q
    policy = policy or TruncationPolicy()
    factor = float(scale) * (1.0 - qv)
    abs_scale = abs(float(scale))
    width = tail_window(qv)
    max_block = max(_MAX_BLOCK, width)

    total = 0.0
    carry = np.empty(0)
    tail = math.inf
    start = 0
    block = _FIRST_BLOCK
    while start < policy.n_max:
        stop = min(start + block, policy.n_max)
        n = np.arange(start, stop)
        values = np.broadcast_to(np.asarray(term(n), dtype=float), n.shape)
        bad = ~np.isfinite(values)
        # terms past a non-finite one are never summed
        usable = int(np.argmax(bad)) if bad.any() else n.size
        values = values[:usable]

        contrib = np.power(qv, n[:usable]) * values
        partial = factor * (total + np.cumsum(contrib))

        window_max = np.full(usable, np.inf)
        history = np.concatenate([carry, np.abs(values)])
        if history.size >= width:
            maxima = _sliding_max(history, width)
            # block index of the first full window
            first = width - 1 - carry.size
            window_max[first:] = maxima
        with np.errstate(invalid="ignore"):
            # 0 * inf before the first full window when scale is 0
            bounds = abs_scale * window_max * np.power(qv, n[:usable] + 1)
        met = bounds <= policy.eps_rel * (1.0 + np.abs(partial))

        if not met.any() and usable < n.size:
            index = start + usable
            raise EvaluationError(
                f"Non-finite series term at index {index}", index=index
            )
        if met.any():
            i = int(np.argmax(met))
            value = factor * (total + float(np.sum(contrib[: i + 1])))
            logger.debug(
                "Jackson sum converged",
                extra={"q": qv, "terms": start + i + 1, "tail": float(bounds[i])},
            )
            return SeriesResult(
                value=value,
                terms_used=start + i + 1,
                tail_estimate=float(bounds[i]),
                converged=True,
            )

        total += float(np.sum(contrib))
        tail = float(bounds[-1])
        carry = history[-(width - 1) :]
        start = stop
        block = min(block * 2, max_block)

    logger.warning(
        "Jackson sum did not converge",
        extra={"q": qv, "n_max": policy.n_max, "tail": tail},
    )
    return SeriesResult(
        value=factor * total,
        terms_used=policy.n_max,
        tail_estimate=tail,
        converged=False,
    )
