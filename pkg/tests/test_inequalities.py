import dataclasses
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qineq_audit.corpus import builtin_corpus, get_function, node_indicator
from qineq_audit.errors import DomainError, PreconditionError
from qineq_audit.inequalities import (
    BoundParams,
    FirstFactor,
    MidpointPlacement,
    Pairing,
    ReasonCode,
    classical_midpoint,
    classical_midpoint_rhs,
    classical_ostrowski,
    endpoint_derivatives,
    hermite_hadamard,
    holder_bound,
    midpoint_bounds,
    midpoint_s,
    midpoint_x,
    ostrowski_final_form,
    ostrowski_moment_form,
    power_mean_bound,
    printed_midpoint_moments,
    sound_kernel_bound,
)
from qineq_audit.inequalities.common import MalformedBound, fractional_power
from qineq_audit.moments import MomentKind, MomentSource, moment_closed_form
from qineq_audit.qcalc import Interval, QParam

CONTINUOUS = [f for f in builtin_corpus() if f.continuous]


def test_bound_params_validation():
    with pytest.raises(DomainError):
        BoundParams(r=0.5)
    assert BoundParams(r=2.0).p == 2.0
    assert BoundParams(r=1.0).p is None
    assert BoundParams(pairing="swapped").pairing is Pairing.SWAPPED


def test_fractional_power_conventions():
    assert fractional_power(0.0, 0.0, "w") == 1.0
    assert fractional_power(-0.5, 1.0, "b") == -0.5
    assert fractional_power(-1e-14, 0.5, "b") == 0.0
    with pytest.raises(MalformedBound) as info:
        fractional_power(-0.1, 0.5, "upper_bracket")
    assert info.value.quantity == "upper_bracket"


def test_endpoint_derivatives_of_square(square, half):
    derivatives = endpoint_derivatives(square, half)
    assert derivatives.at_a == pytest.approx(0.0, abs=1e-9)
    assert derivatives.at_b == pytest.approx(1.5)


def test_power_mean_as_stated_fails_on_square(square, tight):
    verdict = power_mean_bound(square, 0.5, 0.5, BoundParams(r=1.0), tight)
    assert verdict.lhs == pytest.approx(9.0 / 28.0, abs=1e-12)
    assert verdict.rhs == pytest.approx(1.0 / 14.0, abs=1e-12)
    assert not verdict.holds
    assert verdict.reason_code is ReasonCode.NONE


def test_power_mean_swapped_holds_on_square(square, tight):
    params = BoundParams(r=1.0, pairing=Pairing.SWAPPED)
    verdict = power_mean_bound(square, 0.5, 0.5, params, tight)
    assert verdict.rhs == pytest.approx(3.0 / 7.0, abs=1e-12)
    assert verdict.holds
    assert verdict.margin == pytest.approx(3.0 / 7.0 - 9.0 / 28.0, abs=1e-12)


def test_power_mean_without_endpoint_limit_is_unevaluated(wobble):
    verdict = power_mean_bound(wobble, 0.5, 0.5)
    assert verdict.reason_code is ReasonCode.HYPOTHESIS_UNMET
    assert math.isnan(verdict.rhs)
    assert not verdict.holds


def test_holder_bound_on_affine(linear, tight):
    params = BoundParams(r=2.0, holder_first_factor=FirstFactor.STATED_QT)
    verdict = holder_bound(linear, 0.5, 0.5, params, tight)
    assert verdict.lhs == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert verdict.rhs == pytest.approx(0.45412, abs=1e-4)
    assert verdict.holds


def test_holder_bound_first_factor_variants_differ(linear):
    stated = holder_bound(linear, 0.5, 0.5, BoundParams(r=2.0))
    proof = holder_bound(
        linear,
        0.5,
        0.5,
        BoundParams(r=2.0, holder_first_factor=FirstFactor.PROOF_QT_POW_P),
    )
    assert stated.rhs != pytest.approx(proof.rhs)


def test_holder_bound_needs_r_above_one(linear):
    with pytest.raises(PreconditionError):
        holder_bound(linear, 0.5, 0.5, BoundParams(r=1.0))


def test_sound_kernel_bound_on_square(square, tight):
    verdict = sound_kernel_bound(square, 0.5, 0.5, tight)
    assert verdict.rhs == pytest.approx(3.0 / 7.0, abs=1e-12)
    assert verdict.holds
    assert verdict.diagnostics["effective_reading"] == "pointwise"


@settings(max_examples=20, deadline=None)
@given(
    st.sampled_from(CONTINUOUS),
    st.sampled_from([0.1, 0.3, 0.5, 0.7, 0.9]),
    st.floats(0.0, 1.0),
)
def test_sound_kernel_bound_always_holds(f, q, s):
    x = f.interval.a + s * f.interval.length
    verdict = sound_kernel_bound(f, q, x)
    assert verdict.holds, (f.name, q, x, verdict.margin)


def test_sound_kernel_bound_marks_discontinuous_functions():
    f = node_indicator(0.5)
    verdict = sound_kernel_bound(f, 0.5, 0.5)
    assert verdict.reason_code is ReasonCode.DISCONTINUOUS


def test_ostrowski_final_form_regression(square, tight):
    verdict = ostrowski_final_form(square, 0.5, 0.5, M=1.5, policy=tight)
    assert verdict.rhs == pytest.approx(0.25, abs=1e-12)
    assert verdict.lhs == pytest.approx(9.0 / 28.0, abs=1e-12)
    assert not verdict.holds


def test_ostrowski_moment_form_collapses_to_final_form(square):
    params = BoundParams(moment_source=MomentSource.CLOSED_PAPER, check_hypothesis=False)
    moment = ostrowski_moment_form(square, 0.5, 0.3, M=2.0, params=params)
    final = ostrowski_final_form(square, 0.5, 0.3, M=2.0)
    assert moment.rhs == pytest.approx(final.rhs, rel=1e-12)


def test_ostrowski_estimates_missing_bound():
    verdict = ostrowski_final_form(get_function("square_wide"), 0.5, 0.5)
    assert verdict.diagnostics["M_estimated"]
    assert verdict.params.M == pytest.approx(2.5)
    with pytest.raises(DomainError):
        ostrowski_final_form(get_function("square"), 0.5, 0.5, M=-1.0)


def test_midpoint_placements():
    assert midpoint_s(MidpointPlacement.Q_MID, 0.5) == pytest.approx(2.0 / 3.0)
    assert midpoint_s(MidpointPlacement.DUAL_Q_MID, 0.5) == pytest.approx(1.0 / 3.0)
    interval = Interval(-1.0, 2.0)
    assert midpoint_x(MidpointPlacement.ARITH_MID, 0.5, interval) == 0.5
    assert midpoint_x(MidpointPlacement.Q_MID, 0.5, interval) == pytest.approx(1.0)


def test_printed_arithmetic_midpoint_moments_follow_closed_paper():
    printed = printed_midpoint_moments(MidpointPlacement.ARITH_MID, 0.5)
    for kind, value in printed.items():
        closed = moment_closed_form(kind, 0.5, 0.5, MomentSource.CLOSED_PAPER)
        assert value == pytest.approx(closed, rel=1e-12, abs=1e-15)


def test_midpoint_bounds_cross_checks(square):
    params = BoundParams(moment_source=MomentSource.CLOSED_PAPER)
    verdict = midpoint_bounds(square, 0.5, MidpointPlacement.ARITH_MID, 1.0, params)
    assert verdict.inequality_id == "midpoint_arith_mid"
    assert verdict.diagnostics["printed_vs_closed_paper"] <= 1e-15
    assert verdict.diagnostics["printed_vs_series"] >= 0.1
    assert verdict.rhs == pytest.approx(verdict.diagnostics["printed_rhs_r1"], rel=1e-12)
    assert verdict.diagnostics["negative_bracket"]


def test_negative_bracket_under_root_is_malformed(square):
    params = BoundParams(moment_source=MomentSource.CLOSED_PAPER)
    verdict = midpoint_bounds(square, 0.5, MidpointPlacement.ARITH_MID, 2.0, params)
    assert verdict.malformed
    assert math.isnan(verdict.rhs) and math.isnan(verdict.margin)
    assert not verdict.holds
    assert verdict.diagnostics["malformed_quantity"] == "upper_bracket"


def test_dual_placement_has_no_printed_collapsed_form(square):
    verdict = midpoint_bounds(square, 0.5, MidpointPlacement.DUAL_Q_MID)
    assert verdict.diagnostics["printed_rhs_r1"] is None


def test_midpoint_bound_tends_to_classical_value(square):
    q = QParam(0.999)
    x = (q.q * 0.0 + 1.0) / (1.0 + q.q)
    verdict = power_mean_bound(square, q, x, BoundParams(check_hypothesis=False))
    target = classical_midpoint_rhs(square)
    assert target == pytest.approx(0.25)
    assert verdict.rhs == pytest.approx(target, rel=1e-2)


def test_classical_midpoint_rhs_values():
    assert classical_midpoint_rhs(get_function("exp")) == pytest.approx(
        (1.0 + math.e) / 8.0
    )
    assert classical_midpoint_rhs(get_function("constant"), 2.0) == 0.0


def test_classical_ostrowski_and_midpoint_hold(square):
    assert classical_ostrowski(square, 0.25).holds
    verdict = classical_midpoint(square)
    # |1/4 - 1/3| = 1/12 <= 1/4
    assert verdict.lhs == pytest.approx(1.0 / 12.0, abs=1e-15)
    assert verdict.holds
    assert verdict.diagnostics["mean_source"] == "primitive"


def test_classical_checks_are_exact_for_constants():
    constant = get_function("constant")
    assert classical_ostrowski(constant, 0.5).margin == 0.0
    assert classical_midpoint(constant).holds


@pytest.mark.slow
def test_classical_mean_falls_back_to_proxy(square):
    no_primitive = dataclasses.replace(square, primitive=None)
    verdict = classical_midpoint(no_primitive)
    assert verdict.diagnostics["mean_source"] == "proxy"
    assert verdict.lhs == pytest.approx(1.0 / 12.0, abs=1e-5)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["square", "exp", "abs_shift"])
def test_classical_ostrowski_primitive_and_proxy_means_agree(name):
    f = get_function(name)
    exact = classical_ostrowski(f, 0.3)
    proxied = classical_ostrowski(dataclasses.replace(f, primitive=None), 0.3)
    assert exact.diagnostics["mean_source"] == "primitive"
    assert proxied.diagnostics["mean_source"] == "proxy"
    mean = exact.diagnostics["mean"]
    assert proxied.diagnostics["mean"] == pytest.approx(mean, abs=1e-5)
    assert proxied.rhs == exact.rhs
    assert proxied.holds and exact.holds


def test_classical_ostrowski_flags_understated_bound(square):
    verdict = classical_ostrowski(square, 0.5, M=1.0)
    assert verdict.reason_code is ReasonCode.HYPOTHESIS_UNMET


@pytest.mark.parametrize("name", ["affine", "square", "exp", "abs_shift", "quartic_wide"])
@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
def test_hermite_hadamard_holds_for_convex_functions(name, q):
    left, right = hermite_hadamard(get_function(name), q)
    assert left.holds and right.holds
    assert left.reason_code is ReasonCode.NONE


@pytest.mark.parametrize("q", [0.3, 0.7])
def test_hermite_hadamard_is_sharp_for_affine(linear, q):
    for verdict in hermite_hadamard(linear, q):
        assert abs(verdict.margin) <= 1e-12


def test_hermite_hadamard_flags_non_convex_function():
    left, right = hermite_hadamard(get_function("cube_wide"), 0.5)
    assert left.reason_code is ReasonCode.HYPOTHESIS_UNMET
    assert right.reason_code is ReasonCode.HYPOTHESIS_UNMET


@pytest.mark.parametrize("q", [0.3, 0.5, 0.7])
def test_printed_q_midpoint_lower_moment(q):
    printed = printed_midpoint_moments(MidpointPlacement.Q_MID, q)
    expected = q / ((1.0 + q) ** 3 * (1.0 + q + q * q))
    assert printed[MomentKind.K2] == pytest.approx(expected, rel=1e-12)


SMOOTH = [f for f in CONTINUOUS if f.classical_derivative is not None]


@pytest.mark.slow
@pytest.mark.parametrize("f", SMOOTH, ids=lambda f: f.name)
def test_midpoint_bound_tends_to_classical_value_over_corpus(f):
    q = QParam(0.999)
    a, b = f.interval.a, f.interval.b
    x = (q.q * a + b) / (1.0 + q.q)
    verdict = power_mean_bound(f, q, x, BoundParams(r=1.0, check_hypothesis=False))
    target = classical_midpoint_rhs(f)
    assert abs(verdict.rhs - target) <= 1e-2 * abs(target) + 1e-9
