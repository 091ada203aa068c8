import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qineq_audit.errors import DomainError, EvaluationError
from qineq_audit.qcalc import (
    Interval,
    QParam,
    SeriesResult,
    TruncationPolicy,
    jackson_nodes,
    jackson_sum,
    q_bracket,
    tail_window,
)

qs = st.floats(min_value=0.05, max_value=0.95)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.5, 1.5, math.nan, True])
def test_qparam_rejects_values_outside_open_unit_interval(q):
    with pytest.raises(DomainError):
        QParam(q)


def test_domain_error_is_a_value_error():
    with pytest.raises(ValueError):
        QParam(2.0)


def test_interval_validation_and_grid():
    with pytest.raises(DomainError):
        Interval(1.0, 1.0)
    with pytest.raises(DomainError):
        Interval(0.0, math.inf)
    grid = Interval(-1.0, 2.0).grid(9)
    assert grid[0] == -1.0 and grid[-1] == 2.0
    assert len(grid) == 9


def test_truncation_policy_validation():
    with pytest.raises(DomainError):
        TruncationPolicy(eps_rel=0.0)
    with pytest.raises(DomainError):
        TruncationPolicy(n_max=0)


def test_q_bracket_values():
    assert q_bracket(1, 0.5) == 1.0
    assert q_bracket(3, 0.5) == pytest.approx(1.75)
    with pytest.raises(DomainError):
        q_bracket(0, 0.5)


@given(qs)
def test_q_bracket_tends_to_sum_of_powers(q):
    assert q_bracket(4, q) == pytest.approx(1 + q + q**2 + q**3, rel=1e-12)


def test_jackson_nodes_accumulate_at_left_endpoint():
    nodes = jackson_nodes(np.arange(4), 0.5, -1.0, 2.0)
    np.testing.assert_allclose(nodes, [2.0, 0.5, -0.25, -0.625])


@given(qs)
def test_jackson_sum_of_constant_term_is_exact(q):
    result = jackson_sum(lambda n: np.ones_like(n, dtype=float), q)
    assert result.converged
    assert result.value == pytest.approx(1.0, rel=1e-11)


def test_jackson_sum_geometric_closed_form():
    # (1 - q) sum q^n q^n = 1/(1 + q)
    result = jackson_sum(lambda n: 0.5**n, 0.5, scale=3.0)
    assert result.value == pytest.approx(3.0 / 1.5, rel=1e-12)
    assert result.tail_estimate <= 1e-12 * (1 + abs(result.value))


def test_jackson_sum_zero_scale_is_zero():
    result = jackson_sum(lambda n: np.ones(n.shape), 0.5, scale=0.0)
    assert result.value == 0.0
    assert result.converged


def test_jackson_sum_reports_non_convergence_at_cap():
    result = jackson_sum(
        lambda n: np.ones(n.shape), 0.999, policy=TruncationPolicy(n_max=100)
    )
    assert not result.converged
    assert result.terms_used == 100


def test_jackson_sum_raises_on_non_finite_term_before_convergence():
    def term(n):
        return np.where(n == 3, np.nan, 1.0)

    with pytest.raises(EvaluationError) as info:
        jackson_sum(term, 0.5)
    assert info.value.index == 3


def test_jackson_sum_ignores_non_finite_terms_past_convergence():
    def term(n):
        return np.where(n > 200, np.inf, 1.0)

    assert jackson_sum(term, 0.5).value == pytest.approx(1.0, rel=1e-11)


def test_series_results_combine_diagnostics():
    left = SeriesResult(1.0, 10, 1e-13, True)
    right = SeriesResult(0.25, 5, 1e-14, False)
    diff = left - right
    assert diff.value == 0.75
    assert diff.terms_used == 15
    assert not diff.converged


def test_tail_window_spans_a_fixed_stretch_of_nodes():
    assert tail_window(0.5) == 8
    assert tail_window(0.9) == 10
    assert tail_window(0.999) == 1000
    assert tail_window(1.0 - 2.0**-12) >= 4096


@pytest.mark.parametrize("gap_start", [100, 4000, 9000])
def test_jackson_sum_does_not_stop_on_a_short_run_of_zero_terms(gap_start):
    # eight vanishing terms at q near 1 used to satisfy the tail test
    q = 0.999

    def term(n):
        return np.where((n >= gap_start) & (n < gap_start + 8), 0.0, 1.0)

    result = jackson_sum(term, q)
    expected = 1.0 - (q**gap_start - q ** (gap_start + 8))
    assert result.converged
    assert result.value == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("q", [0.3, 0.9, 0.999])
def test_jackson_partial_sums_of_nonnegative_terms_are_monotone(q):
    def term(n):
        return 1.0 + np.sin(n.astype(float)) ** 2

    caps = [1, 2, 4, 8, 16, 32, 64, 128]
    sums = [
        jackson_sum(term, q, policy=TruncationPolicy(n_max=cap)).value for cap in caps
    ]
    assert np.all(np.diff(sums) >= 0.0)
    assert jackson_sum(term, q).value >= sums[-1]
