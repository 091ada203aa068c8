# src/qineq_audit/qcalc/funcspec.py
"""Descriptors for the real functions under audit."""

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .core import Interval

RealFunction = Callable[[np.ndarray | float], np.ndarray | float]

# Convexity claim tags
CONVEX_ABS_DQ_POW_R = "abs_dq_pow_r"
CONVEX_F = "f"


@dataclass(frozen=True)
class FuncSpec:
    """
    A real function on a closed interval plus the metadata operations need.

    ``eval`` must accept numpy arrays and return an array of the same shape.
    Optional fields are checked lazily: an operation that needs a missing
    classical derivative or primitive raises ``ConfigurationError``.
    """

    name: str
    eval: RealFunction
    interval: Interval
    classical_derivative: RealFunction | None = None
    derivative_bound_M: float | None = None
    convexity_claims: frozenset[str] = field(default_factory=frozenset)
    primitive: RealFunction | None = None
    continuous: bool = True

    def __call__(self, t):
        return self.eval(t)

    def value(self, t: float) -> float:
        """Evaluate at a single point and return a plain float."""
        return float(np.asarray(self.eval(np.asarray(t, dtype=float))))

    @property
    def claims_convex(self) -> bool:
        return CONVEX_F in self.convexity_claims

    def exact_integral(self) -> float | None:
        """Classical integral over ``interval`` from the primitive, if known."""
        if self.primitive is None:
            return None
        return float(self.primitive(self.interval.b)) - float(
            self.primitive(self.interval.a)
        )
