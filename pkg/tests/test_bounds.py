"""Bound families: reference values, identities, and curve sampling."""

import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from ldgm_bounds import (
    BoundCurve,
    DegreeDistribution,
    NoSolutionError,
    RatePoint,
    binary_entropy,
    conjectured_exit_distortion_bound,
    conjectured_exit_rate_bound,
    counting_bound_distortion,
    coverage_exponent,
    parametric_distortion,
    parametric_endpoints,
    parametric_rate,
    poisson_ensemble_distortion_bound,
    poisson_ensemble_rate_bound,
    sample_curve,
    shannon_distortion,
    solve_x_for_rate,
    test_channel_distortion_bound as channel_distortion_bound,
    test_channel_rate_bound as channel_rate_bound,
)

REG2 = DegreeDistribution.regular(2)
REG3 = DegreeDistribution.regular(3)
MIXED = DegreeDistribution.from_fractions({1: 0.5, 3: 0.5})

# Frozen references from independent 30-digit recomputations.
COUNTING_REG2_HALF = 0.11504158274866218
COUNTING_REG2_TWO_THIRDS = 0.06272310442371784
COUNTING_REG2_TWO_FIFTHS = 0.1920332661989297
COUNTING_REG3_THIRD = 0.17631293237801053
COUNTING_REG3_TWO_THIRDS = 0.06156056562895298
COUNTING_MIXED_HALF = 0.13223469928350787
X_REG2_HALF = 0.16479763571213157
ENSEMBLE_R4_D005 = 0.7171884451196279
CONJ_L2_D011 = 0.7007744813694133
CONJ_L3_D02 = 0.468258087174193


# ---------------------------------------------------------------------------
# Shannon curve
# ---------------------------------------------------------------------------


def test_shannon_reference_values():
    assert shannon_distortion(0.5) == pytest.approx(0.11002786443835955, abs=1e-10)
    assert shannon_distortion(2.0 / 3.0) == pytest.approx(
        0.06149047007872418, abs=1e-10
    )


def test_shannon_endpoints():
    assert shannon_distortion(1.0) == 0.0
    assert shannon_distortion(0.0) == pytest.approx(0.5, abs=1e-12)


# ---------------------------------------------------------------------------
# counting bound, parametric arc
# ---------------------------------------------------------------------------


def test_counting_regular2_reference_values():
    assert counting_bound_distortion(REG2, 0.5) == pytest.approx(
        COUNTING_REG2_HALF, abs=1e-10
    )
    assert counting_bound_distortion(REG2, 2.0 / 3.0) == pytest.approx(
        COUNTING_REG2_TWO_THIRDS, abs=1e-10
    )
    assert counting_bound_distortion(REG2, 0.4) == pytest.approx(
        COUNTING_REG2_TWO_FIFTHS, abs=1e-10
    )


def test_counting_regular3_reference_values():
    assert counting_bound_distortion(REG3, 1.0 / 3.0) == pytest.approx(
        COUNTING_REG3_THIRD, abs=1e-10
    )
    assert counting_bound_distortion(REG3, 2.0 / 3.0) == pytest.approx(
        COUNTING_REG3_TWO_THIRDS, abs=1e-10
    )


def test_counting_mixed_reference_value():
    assert counting_bound_distortion(MIXED, 0.5) == pytest.approx(
        COUNTING_MIXED_HALF, abs=1e-10
    )


def test_solve_x_reference():
    assert solve_x_for_rate(REG2, 0.5) == pytest.approx(X_REG2_HALF, abs=1e-9)


def test_parametric_round_trip():
    x = solve_x_for_rate(REG2, 0.7)
    assert parametric_rate(REG2, x) == pytest.approx(0.7, abs=1e-9)
    d = parametric_distortion(REG2, x)
    assert counting_bound_distortion(REG2, 0.7) == pytest.approx(d, abs=1e-12)


def test_parametric_endpoints_regular2():
    start, end = parametric_endpoints(REG2)
    assert start == (0.0, 1.0)
    assert end[0] == pytest.approx(0.25, abs=1e-15)
    assert end[1] == pytest.approx(0.25, abs=1e-15)


def test_parametric_endpoints_general_second_moment():
    # Non-regular case: R -> 1/E[i^2] and D -> (E[i^2]-E[i]) / (2 E[i^2]).
    start, end = parametric_endpoints(MIXED)
    second = MIXED.moment(2)
    assert start == (0.0, 1.0)
    assert end[1] == pytest.approx(1.0 / second, abs=1e-14)
    assert end[0] == pytest.approx(
        (second - MIXED.average_degree) / (2.0 * second), abs=1e-14
    )


def test_parametric_approaches_endpoints():
    x_small = 1e-8
    assert parametric_rate(REG2, x_small) == pytest.approx(1.0, abs=1e-6)
    assert parametric_distortion(REG2, x_small) == pytest.approx(0.0, abs=1e-6)
    # The x -> 1 side loses precision quadratically, so only the trend is
    # checked numerically; the exact limit is covered by parametric_endpoints.
    far, near = parametric_rate(REG2, 1.0 - 1e-2), parametric_rate(REG2, 1.0 - 1e-3)
    assert abs(near - 0.25) < abs(far - 0.25)


def test_counting_line_segment_regular2():
    # Below the reciprocal average degree the arc hands off to a straight
    # line through (0, 1/2).
    assert counting_bound_distortion(REG2, 0.0) == 0.5
    arc_end = counting_bound_distortion(REG2, 0.5)
    line_end = counting_bound_distortion(REG2, 0.5 - 1e-12)
    assert line_end == pytest.approx(arc_end, abs=1e-9)


def test_counting_degenerate_low_degree():
    # Average degree <= 1 collapses the bound to the trivial line (1-R)/2.
    reg1 = DegreeDistribution.regular(1)
    for rate in (0.0, 0.3, 0.77, 1.0):
        assert counting_bound_distortion(reg1, rate) == pytest.approx(
            (1.0 - rate) / 2.0, abs=1e-15
        )


def test_counting_rejects_bad_rate():
    with pytest.raises(ValueError):
        counting_bound_distortion(REG2, -0.1)
    with pytest.raises(ValueError):
        counting_bound_distortion(REG2, 1.1)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0))
def test_counting_in_range_and_above_shannon(rate):
    value = counting_bound_distortion(REG2, rate)
    assert 0.0 <= value <= 0.5
    assert value >= shannon_distortion(rate) - 1e-12


@settings(max_examples=30, deadline=None)
@given(
    st.floats(min_value=0.02, max_value=0.96),
    st.floats(min_value=0.005, max_value=0.03),
)
def test_counting_decreasing_in_rate(rate, step):
    lo = counting_bound_distortion(REG3, rate)
    hi = counting_bound_distortion(REG3, rate + step)
    assert hi <= lo + 1e-10


# ---------------------------------------------------------------------------
# coverage exponent
# ---------------------------------------------------------------------------


def test_coverage_exponent_below_curve_is_small():
    at_bound = counting_bound_distortion(REG2, 0.5)
    result = coverage_exponent(REG2, at_bound - 0.02, 0.5)
    assert result.value < 1.0


def test_coverage_exponent_on_curve_is_one():
    for rate in (0.55, 0.7, 0.9):
        at_bound = counting_bound_distortion(REG2, rate)
        result = coverage_exponent(REG2, at_bound, rate)
        assert result.value == pytest.approx(1.0, abs=1e-7)


def test_coverage_exponent_zero_rate():
    result = coverage_exponent(REG2, 0.3, 0.0)
    assert result.value == pytest.approx(binary_entropy(0.3), abs=1e-12)
    assert result.minimizer_x == 0.0


def test_coverage_exponent_minimizer_stationarity():
    rate = 0.6
    distortion = counting_bound_distortion(REG2, rate) - 0.01
    result = coverage_exponent(REG2, distortion, rate)
    x = result.minimizer_x
    lhs = x / (1.0 + x)
    rhs = distortion + rate * REG2.mean_occupancy(x)
    assert lhs == pytest.approx(rhs, abs=1e-6)


# ---------------------------------------------------------------------------
# test-channel bound
# ---------------------------------------------------------------------------


def test_test_channel_matches_counting_regular():
    for degree, dist in ((2, REG2), (3, REG3)):
        for rate in (1.0 / degree + 0.05, 0.6, 0.82):
            counting = counting_bound_distortion(dist, rate)
            channel = channel_distortion_bound(degree, rate)
            assert channel == pytest.approx(counting, abs=1e-6)


def test_test_channel_rate_bound_endpoints():
    assert channel_rate_bound(2, 0.0) == 1.0
    assert channel_rate_bound(2, 0.5) == 0.0


def test_test_channel_rate_bound_above_shannon():
    for d in (0.05, 0.11, 0.2, 0.3):
        assert channel_rate_bound(2, d) > 1.0 - binary_entropy(d)


def test_test_channel_distortion_bound_monotone():
    values = [channel_distortion_bound(3, r) for r in (0.4, 0.6, 0.8)]
    assert values[0] > values[1] > values[2]


# ---------------------------------------------------------------------------
# fixed-check-degree ensemble bound
# ---------------------------------------------------------------------------


def test_ensemble_rate_bound_against_independent_solver():
    # Same root found through a library solver on the defining equation.
    target = 1.0 - binary_entropy(0.05)

    def slack(rate):
        return rate * (1.0 - math.exp(-(1.0 - 0.05) * 4.0 / rate)) - target

    reference = brentq(slack, 1e-6, 1.0, xtol=1e-13)
    value = poisson_ensemble_rate_bound(4, 0.05)
    assert value == pytest.approx(reference, abs=1e-8)
    assert value == pytest.approx(ENSEMBLE_R4_D005, abs=1e-10)


def test_ensemble_rate_bound_no_solution():
    # Check degree 1 cannot reach the entropy target at distortion 0.01.
    with pytest.raises(NoSolutionError):
        poisson_ensemble_rate_bound(1, 0.01)


def test_ensemble_distortion_bound_round_trip():
    rate = poisson_ensemble_rate_bound(4, 0.05)
    back = poisson_ensemble_distortion_bound(4, rate)
    assert back == pytest.approx(0.05, abs=1e-8)


def test_ensemble_distortion_above_shannon():
    for rate in (0.45, 0.6, 0.85):
        assert poisson_ensemble_distortion_bound(2, rate) > shannon_distortion(rate)


# ---------------------------------------------------------------------------
# conjectured bound
# ---------------------------------------------------------------------------


def test_conjecture_reference_values():
    assert conjectured_exit_rate_bound(2, 0.11) == pytest.approx(
        CONJ_L2_D011, abs=1e-12
    )
    assert conjectured_exit_rate_bound(3, 0.2) == pytest.approx(
        CONJ_L3_D02, abs=1e-12
    )


def test_conjecture_degree_one_is_trivial():
    for d in (0.0, 0.1, 0.25, 0.4, 0.49):
        assert conjectured_exit_rate_bound(1, d) == pytest.approx(1.0, abs=1e-12)


def test_conjecture_tighter_than_counting():
    for d in (0.05, 0.11, 0.2):
        conj = conjectured_exit_rate_bound(2, d)
        channel = channel_rate_bound(2, d)
        assert conj > channel


def test_conjecture_distortion_inversion():
    rate = conjectured_exit_rate_bound(2, 0.11)
    back = conjectured_exit_distortion_bound(2, rate)
    assert back == pytest.approx(0.11, abs=1e-8)


def test_conjecture_saturates_at_low_rate():
    # The rate bound never falls below 1/l, so such rates admit nothing
    # under one half.
    assert conjectured_exit_distortion_bound(2, 0.5) == 0.5
    assert conjectured_exit_distortion_bound(3, 1.0 / 3.0) == 0.5
    assert conjectured_exit_distortion_bound(1, 0.99) == 0.5
    assert conjectured_exit_distortion_bound(1, 1.0) == 0.0


# ---------------------------------------------------------------------------
# curve sampling
# ---------------------------------------------------------------------------


def test_rate_point_validation():
    with pytest.raises(ValueError):
        RatePoint(distortion=0.6, rate=0.5)
    with pytest.raises(ValueError):
        RatePoint(distortion=0.1, rate=1.5)


def test_bound_curve_rejects_unknown_kind():
    with pytest.raises(ValueError):
        BoundCurve(kind="mystery", points=(), params=())


def test_sample_curve_shannon():
    curve = sample_curve("shannon", [0.2, 0.5, 0.8])
    assert curve.kind == "shannon"
    assert [p.rate for p in curve.points] == [0.2, 0.5, 0.8]
    assert curve.points[1].distortion == pytest.approx(0.11002786443835955, abs=1e-9)
    assert not curve.is_conjecture


def test_sample_curve_counting_fixed_distribution():
    curve = sample_curve("counting", [0.4, 0.5, 0.66], dist=REG2)
    assert dict(curve.params)["degrees"] == REG2.to_literal()
    distortions = [p.distortion for p in curve.points]
    assert distortions[0] > distortions[1] > distortions[2]


def test_sample_curve_counting_poisson_family():
    curve = sample_curve("counting", [0.5, 0.7], check_degree=2)
    assert dict(curve.params)["family"] == "poisson"
    assert curve.points[0].distortion == pytest.approx(0.1161882945, abs=1e-6)


def test_sample_curve_dominance_over_shannon():
    rates = [0.3, 0.5, 0.7, 0.9]
    counting = sample_curve("counting", rates, dist=REG2)
    shannon = sample_curve("shannon", rates)
    for c, s in zip(counting.points, shannon.points):
        assert c.distortion > s.distortion


def test_sample_curve_conjecture_flagged():
    curve = sample_curve("conjectured_exit", [0.6, 0.8], degree=2)
    assert curve.is_conjecture


def test_sample_curve_argument_validation():
    with pytest.raises(ValueError):
        sample_curve("counting", [0.5])  # needs a distribution or family
    with pytest.raises(ValueError):
        sample_curve("counting", [0.5], dist=REG2, check_degree=2)
    with pytest.raises(ValueError):
        sample_curve("test_channel", [0.5])  # needs degree
    with pytest.raises(ValueError):
        sample_curve("dwr", [0.5])  # needs check degree
    with pytest.raises(ValueError):
        sample_curve("shannon", [0.5, 1.5])  # rate out of range
