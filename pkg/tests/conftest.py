import numpy as np
import pytest

from qineq_audit.corpus import get_function
from qineq_audit.qcalc import FuncSpec, Interval, QParam, TruncationPolicy


@pytest.fixture
def policy():
    return TruncationPolicy()


@pytest.fixture
def half():
    return QParam(0.5)


@pytest.fixture
def linear():
    return get_function("affine")


@pytest.fixture
def square():
    return get_function("square")


@pytest.fixture
def wobble():
    """t sin(log t): its q-derivative oscillates without limit as t -> 0+."""

    def f(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(t > 0.0, t * np.sin(np.log(t)), 0.0)

    return FuncSpec(name="wobble", eval=f, interval=Interval(0.0, 1.0))


@pytest.fixture
def tight():
    """Truncation well below the 1e-12 tolerance of exact-value checks."""
    return TruncationPolicy(eps_rel=1e-15)
