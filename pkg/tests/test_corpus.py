import numpy as np
import pytest

from qineq_audit.corpus import (
    UNIT,
    WIDE,
    builtin_corpus,
    check_derivative_power_convexity,
    check_function_convexity,
    check_midpoint_convexity,
    corpus_names,
    estimate_derivative_bound,
    get_function,
    node_indicator,
    select_corpus,
)
from qineq_audit.errors import UsageError
from qineq_audit.qcalc import FuncSpec, QParam, jackson_nodes


def test_corpus_names_are_unique():
    names = corpus_names()
    assert len(names) == len(set(names))
    assert {"square", "exp", "abs_shift", "quintic_wide", "node_indicator"} <= set(
        names
    )


def test_unit_functions_carry_bounds_and_wide_copies_do_not():
    for spec in builtin_corpus():
        if spec.interval == UNIT:
            assert spec.derivative_bound_M is not None
        elif spec.name != "node_indicator":
            assert spec.interval == WIDE
            assert spec.derivative_bound_M is None


def test_get_function_and_select_corpus():
    assert get_function("cube")(np.array([2.0]))[0] == 8.0
    assert [f.name for f in select_corpus(["exp", "square"])] == ["square", "exp"]
    assert len(select_corpus([])) == len(corpus_names())
    with pytest.raises(UsageError):
        get_function("sine")
    with pytest.raises(UsageError):
        select_corpus(["sine"])


def test_exact_integral_from_primitive():
    assert get_function("quartic").exact_integral() == pytest.approx(0.2)
    assert get_function("abs_shift").exact_integral() == pytest.approx(0.29)
    assert node_indicator(0.5).exact_integral() is None


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
def test_node_indicator_hits_nodes_only(q):
    f = node_indicator(q)
    nodes = jackson_nodes(np.arange(20), q, WIDE.a, WIDE.b)
    assert np.all(f(nodes) == 1.0)
    midpoints = 0.5 * (nodes[1:] + nodes[:-1])
    assert np.all(f(midpoints) == 0.0)
    assert f.value(-1.0) == 0.0
    assert not f.continuous


def test_convexity_check_accepts_convex_and_rejects_concave():
    assert check_midpoint_convexity(np.exp, UNIT).passed
    verdict = check_midpoint_convexity(np.sqrt, UNIT)
    assert not verdict.passed
    assert verdict.worst_violation > 0.0
    t1, t2, lam = verdict.witness
    assert 0.0 < t1 <= 1.0 and 0.0 < t2 <= 1.0 and 0.0 <= lam <= 1.0


def test_convexity_check_is_deterministic_for_a_seed():
    first = check_midpoint_convexity(np.sin, WIDE, seed=7)
    second = check_midpoint_convexity(np.sin, WIDE, seed=7)
    assert first == second


def test_function_convexity_claims_agree_with_sampling():
    for spec in builtin_corpus():
        if spec.claims_convex:
            assert check_function_convexity(spec).passed, spec.name
    assert not check_function_convexity(get_function("cube_wide")).passed


def test_derivative_power_convexity():
    q = QParam(0.5)
    assert check_derivative_power_convexity(get_function("square"), q, 2.0).passed
    # aD_q t^(3/2) is a multiple of sqrt(t)
    root_like = FuncSpec(
        name="pow_3_2", eval=lambda t: np.asarray(t) ** 1.5, interval=UNIT
    )
    assert not check_derivative_power_convexity(root_like, q, 1.0).passed


def test_estimated_derivative_bound_of_square():
    # aD_q t^2 = (1 + q) t peaks at t = b
    assert estimate_derivative_bound(get_function("square"), QParam(0.5)) == (
        pytest.approx(1.5)
    )


def test_affine_function_is_an_equality_case():
    verdict = check_midpoint_convexity(lambda t: 2.0 * t - 1.0, WIDE)
    assert verdict.passed
    assert verdict.worst_violation <= 1e-14
