# src/qineq_audit/corpus/registry.py
"""The builtin corpus of test functions."""

import math
from logging import getLogger

import numpy as np

from ..errors import UsageError
from ..qcalc import (
    CONVEX_ABS_DQ_POW_R,
    CONVEX_F,
    FuncSpec,
    Interval,
    QLike,
    as_qparam,
)

logger = getLogger(__name__)

UNIT = Interval(0.0, 1.0)
WIDE = Interval(-1.0, 2.0)
ABS_KINK = 0.3

# Relative tolerance for recognising a Jackson node
NODE_REL_TOL = 1e-9
# Absolute floor, in ulps of the larger endpoint magnitude
NODE_ULP_FLOOR = 64

_CONVEX_ALL = frozenset({CONVEX_F, CONVEX_ABS_DQ_POW_R})


def _as_array(t) -> np.ndarray:
    return np.asarray(t, dtype=float)


def _constant(c: float):
    def f(t):
        return np.full_like(_as_array(t), c)

    return f


def _monomial(k: int, coefficient: float = 1.0):
    def f(t):
        return coefficient * _as_array(t) ** k

    return f


def _abs_shift(t):
    return np.abs(_as_array(t) - ABS_KINK)


def _abs_shift_derivative(t):
    return np.sign(_as_array(t) - ABS_KINK)


def _abs_shift_primitive(t):
    shifted = _as_array(t) - ABS_KINK
    return 0.5 * shifted * np.abs(shifted)


_MONOMIAL_NAMES = ["affine", "square", "cube", "quartic", "quintic"]

# Claims for t^k on [-1, 2]; on [0, 1] every monomial carries both
_WIDE_CLAIMS = {
    1: _CONVEX_ALL,
    2: _CONVEX_ALL,
    3: frozenset({CONVEX_ABS_DQ_POW_R}),
    4: frozenset({CONVEX_F}),
    5: frozenset(),
}


def _polynomial_family(interval: Interval, suffix: str, with_bounds: bool):
    """Constant and monomials t^k for k = 1..5."""
    specs = [
        FuncSpec(
            name=f"constant{suffix}",
            eval=_constant(2.0),
            interval=interval,
            classical_derivative=_constant(0.0),
            derivative_bound_M=0.0 if with_bounds else None,
            convexity_claims=_CONVEX_ALL,
            primitive=_monomial(1, 2.0),
        )
    ]
    for k, name in enumerate(_MONOMIAL_NAMES, start=1):
        claims = _CONVEX_ALL if with_bounds else _WIDE_CLAIMS[k]
        specs.append(
            FuncSpec(
                name=f"{name}{suffix}",
                eval=_monomial(k),
                interval=interval,
                classical_derivative=_monomial(k - 1, float(k)),
                derivative_bound_M=float(k) if with_bounds else None,
                convexity_claims=claims,
                primitive=_monomial(k + 1, 1.0 / (k + 1)),
            )
        )
    return specs


def node_indicator(q: QLike, interval: Interval = WIDE) -> FuncSpec:
    """
    Indicator of the Jackson nodes q^n b + (1 - q^n) a.

    A point is a node when it lies within
    ``1e-9 (b - a) q^n + 64 ulp(max(|a|, |b|))`` of the nearest node, whose
    index is recovered as round(log((t - a)/(b - a)) / log q).
    """
    qv = as_qparam(q).q
    a, b = interval.a, interval.b
    span = interval.length
    log_q = math.log(qv)
    floor = NODE_ULP_FLOOR * np.finfo(float).eps * max(abs(a), abs(b))

    def indicator(t):
        t = _as_array(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            index = np.rint(np.log((t - a) / span) / log_q)
        valid = np.isfinite(index) & (index >= 0)
        qn = np.power(qv, np.where(valid, index, 0.0))
        nearest = qn * b + (1.0 - qn) * a
        hit = valid & (np.abs(t - nearest) <= NODE_REL_TOL * span * qn + floor)
        return hit.astype(float)

    return FuncSpec(
        name="node_indicator",
        eval=indicator,
        interval=interval,
        continuous=False,
    )


def builtin_corpus(q: QLike = 0.5) -> list[FuncSpec]:
    """
    Every builtin function. ``q`` only affects ``node_indicator``.

    Functions on [0, 1] carry a known derivative bound M; their copies on
    [-1, 2] (suffix ``_wide``) leave M to be estimated.
    """
    corpus = _polynomial_family(UNIT, "", with_bounds=True)
    corpus += [
        FuncSpec(
            name="exp",
            eval=lambda t: np.exp(_as_array(t)),
            interval=UNIT,
            classical_derivative=lambda t: np.exp(_as_array(t)),
            derivative_bound_M=math.e,
            convexity_claims=_CONVEX_ALL,
            primitive=lambda t: np.exp(_as_array(t)),
        ),
        FuncSpec(
            name="abs_shift",
            eval=_abs_shift,
            interval=UNIT,
            classical_derivative=_abs_shift_derivative,
            derivative_bound_M=1.0,
            convexity_claims=frozenset({CONVEX_F}),
            primitive=_abs_shift_primitive,
        ),
    ]
    corpus += _polynomial_family(WIDE, "_wide", with_bounds=False)
    corpus.append(node_indicator(q, WIDE))
    return corpus


def corpus_names() -> list[str]:
    return [spec.name for spec in builtin_corpus()]


def get_function(name: str, q: QLike = 0.5) -> FuncSpec:
    """Look up a builtin function by name."""
    for spec in builtin_corpus(q):
        if spec.name == name:
            return spec
    raise UsageError(f"Unknown corpus function {name!r}; known: {corpus_names()}")


def select_corpus(names: list[str] | tuple[str, ...], q: QLike = 0.5) -> list[FuncSpec]:
    """Builtin functions filtered by name; an empty filter keeps everything."""
    corpus = builtin_corpus(q)
    if not names:
        return corpus
    unknown = set(names) - {spec.name for spec in corpus}
    if unknown:
        raise UsageError(f"Unknown corpus functions: {sorted(unknown)}")
    return [spec for spec in corpus if spec.name in names]
