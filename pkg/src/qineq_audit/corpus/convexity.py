# src/qineq_audit/corpus/convexity.py
"""Sampled convexity checks and derivative-bound estimates."""

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from logging import getLogger

import numpy as np

from ..config.config import (
    CONVEXITY_SAMPLES,
    CONVEXITY_TOL,
    DEFAULT_SEED,
    FUNC_CACHE_SIZE,
)
from ..errors import EvaluationError
from ..qcalc import (
    FuncSpec,
    Interval,
    QParam,
    TruncationPolicy,
    jackson_nodes,
    q_derivative,
)

logger = getLogger(__name__)


@dataclass(frozen=True)
class ConvexityVerdict:
    """
    Result of a sampled convexity test.

    ``worst_violation`` is the largest normalised excess
    (g(mid) - chord) / (1 + |chord|) over all sampled pairs; ``witness``
    holds the (t1, t2, lambda) triple that produced it.
    """

    passed: bool
    worst_violation: float
    witness: tuple[float, float, float]
    samples: int
    tolerance: float


def check_midpoint_convexity(
    g: Callable[[np.ndarray], np.ndarray],
    interval: Interval,
    samples: int = CONVEXITY_SAMPLES,
    seed: int = DEFAULT_SEED,
    tol: float = CONVEXITY_TOL,
) -> ConvexityVerdict:
    """
    Test convexity of ``g`` on (a, b] at random pairs.

    Each pair is checked at lambda = 1/2 and at an independent random
    lambda. Points are drawn as b - (b - a) U so the left endpoint is never
    sampled. The same seed always yields the same verdict.
    """
    rng = np.random.default_rng(seed)
    t1 = interval.b - interval.length * rng.random(samples)
    t2 = interval.b - interval.length * rng.random(samples)
    lam = np.concatenate([np.full(samples, 0.5), rng.random(samples)])
    t1, t2 = np.tile(t1, 2), np.tile(t2, 2)

    g1 = np.asarray(g(t1), dtype=float)
    g2 = np.asarray(g(t2), dtype=float)
    g_mid = np.asarray(g(lam * t1 + (1.0 - lam) * t2), dtype=float)
    if not (np.all(np.isfinite(g1)) and np.all(np.isfinite(g2)) and np.all(np.isfinite(g_mid))):
        raise EvaluationError("Convexity sample produced a non-finite value")

    chord = lam * g1 + (1.0 - lam) * g2
    violation = (g_mid - chord) / (1.0 + np.abs(chord))
    worst = int(np.argmax(violation))
    verdict = ConvexityVerdict(
        passed=bool(violation[worst] <= tol),
        worst_violation=float(violation[worst]),
        witness=(float(t1[worst]), float(t2[worst]), float(lam[worst])),
        samples=samples,
        tolerance=tol,
    )
    if not verdict.passed:
        logger.debug(
            "Convexity violated",
            extra={"violation": verdict.worst_violation, "witness": verdict.witness},
        )
    return verdict


@lru_cache(maxsize=FUNC_CACHE_SIZE)
def check_function_convexity(
    f: FuncSpec, seed: int = DEFAULT_SEED, interval: Interval | None = None
) -> ConvexityVerdict:
    """Sampled convexity of f itself."""
    return check_midpoint_convexity(f.eval, interval or f.interval, seed=seed)


@lru_cache(maxsize=FUNC_CACHE_SIZE)
def check_derivative_power_convexity(
    f: FuncSpec,
    q: QParam,
    r: float,
    seed: int = DEFAULT_SEED,
    interval: Interval | None = None,
) -> ConvexityVerdict:
    """Sampled convexity of |aD_q f|^r on (a, b]."""
    interval = interval or f.interval

    def g(t: np.ndarray) -> np.ndarray:
        return np.abs(q_derivative(f, q, interval.a, t)) ** r

    return check_midpoint_convexity(g, interval, seed=seed)


def estimate_derivative_bound(
    f: FuncSpec,
    q: QParam,
    policy: TruncationPolicy | None = None,
    interval: Interval | None = None,
) -> float:
    """
    Estimate sup |aD_q f| over (a, b].

    The q-derivative is evaluated at the Jackson nodes a Jackson sum under
    ``policy`` would visit and at the midpoints between consecutive nodes.
    """
    policy = policy or TruncationPolicy()
    interval = interval or f.interval
    count = min(policy.n_max, math.ceil(math.log(policy.eps_rel) / math.log(q.q)) + 1)
    nodes = jackson_nodes(np.arange(count + 1), q, interval.a, interval.b)
    nodes = nodes[nodes > interval.a]
    points = np.concatenate([nodes, 0.5 * (nodes[1:] + nodes[:-1])])
    bound = float(np.max(np.abs(q_derivative(f, q, interval.a, points))))
    logger.debug(
        "Estimated derivative bound",
        extra={"function": f.name, "q": q.q, "M": bound},
    )
    return bound
