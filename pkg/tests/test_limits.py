import pytest

from qineq_audit.corpus import get_function, node_indicator
from qineq_audit.errors import ConfigurationError, DomainError
from qineq_audit.qcalc import (
    DEFAULT_Q_SCHEDULE,
    classical_limit_probe_derivative,
    classical_limit_probe_integral,
    extrapolate_to_classical,
)


def test_default_schedule_approaches_one():
    assert DEFAULT_Q_SCHEDULE[0] == 0.5
    assert DEFAULT_Q_SCHEDULE[-1] == 1.0 - 2.0**-12


def test_extrapolation_removes_linear_error():
    probes = [(0.5, 1.5), (0.75, 1.25)]
    assert extrapolate_to_classical(probes) == pytest.approx(1.0, abs=1e-15)


def test_extrapolation_removes_quadratic_error():
    probes = [(1 - h, 2.0 + h - 3 * h * h) for h in (0.5, 0.25, 0.125)]
    assert extrapolate_to_classical(probes) == pytest.approx(2.0, abs=1e-13)


def test_derivative_probe_of_square_converges(square):
    record = classical_limit_probe_derivative(square, 0.0, 0.5)
    assert record.converged
    assert record.reference == 1.0
    # error (1 - q)/2 halves along q = 1 - 2^-k
    errors = [abs(value - 1.0) for _, value in record.probe_points]
    for previous, current in zip(errors, errors[1:]):
        assert current == pytest.approx(previous / 2.0, rel=1e-6)


def test_integral_probe_of_square_converges(square):
    record = classical_limit_probe_integral(square)
    assert record.converged
    assert record.reference == pytest.approx(1.0 / 3.0)
    assert record.final_deviation <= 1e-3


def test_probes_need_metadata():
    f = node_indicator(0.5)
    with pytest.raises(ConfigurationError):
        classical_limit_probe_derivative(f, -1.0, 0.5)
    with pytest.raises(ConfigurationError):
        classical_limit_probe_integral(f)


def test_probe_schedule_validation():
    f = get_function("exp")
    with pytest.raises(DomainError):
        classical_limit_probe_integral(f, q_schedule=[])
    with pytest.raises(DomainError):
        classical_limit_probe_integral(f, q_schedule=[0.5, 0.5])
