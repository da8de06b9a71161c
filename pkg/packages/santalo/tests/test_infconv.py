"""Tests for costs, the infimum-convolution engine and the comparison checks."""

import numpy as np
import pytest

from santalo.commons import ErrorCode, SantaloError
from santalo.core import Axis, GridFunction, MeasureSpec, MonotoneMap, QuadraticProfile, random_lipschitz_1d
from santalo.infconv import (
    DistanceCost,
    HopfLaxCost,
    InnerProductCost,
    SetOnGrid,
    comparison_theorem_check,
    cost_transfer_check,
    decomposition_check,
    enlarge,
    hamilton_jacobi_residual,
    hopf_lax,
    hopf_lax_comparison_check,
    hopf_lax_semigroup_check,
    inf_convolution,
    require_supported_pair,
)

# -- costs ---------------------------------------------------------------------------


def test_hopf_lax_time_must_be_positive():
    with pytest.raises(SantaloError) as excinfo:
        HopfLaxCost(QuadraticProfile(1.0), 0.0)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR


def test_inner_product_map_must_vanish_at_zero():
    shifted = MonotoneMap(np.array([-1.0, 1.0]), np.array([0.0, 2.0]))
    with pytest.raises(SantaloError) as excinfo:
        InnerProductCost(shifted)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR
    cost = InnerProductCost(MonotoneMap.linear(2.0))
    assert cost.allows_negative_eps
    assert cost.pairwise(np.array([[1.0, 2.0]]), np.array([[3.0, -1.0]]))[0, 0] == pytest.approx(-2.0)


def test_hopf_lax_cost_scales_the_profile():
    cost = HopfLaxCost(QuadraticProfile(1.0), 0.5)
    # t·G(d/t) = d²/(2t)
    assert cost.pairwise(np.array([[0.0]]), np.array([[1.0]]))[0, 0] == pytest.approx(1.0)
    assert "t=0.5" in cost.label


# -- engine ----------------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(3))
def test_fast_paths_match_brute_force(seed):
    f, _ = random_lipschitz_1d(seed)
    for cost in (DistanceCost.euclidean(), HopfLaxCost(QuadraticProfile(1.0), 0.7)):
        fast = inf_convolution(f, cost)
        brute = inf_convolution(f, cost, fast=False)
        np.testing.assert_allclose(fast.values, brute.values, rtol=0, atol=1e-9)


def test_quadratic_fast_path_in_the_plane(gaussian_2d):
    cost = HopfLaxCost(QuadraticProfile(1.0), 0.5)
    np.testing.assert_allclose(
        inf_convolution(gaussian_2d, cost).values,
        inf_convolution(gaussian_2d, cost, fast=False).values,
        rtol=0,
        atol=1e-9,
    )


def test_distance_cone_is_a_fixed_point():
    axis = Axis.symmetric(3.0, 121)
    f = GridFunction.from_callable(np.abs, axis)
    np.testing.assert_allclose(inf_convolution(f, DistanceCost.euclidean()).values, f.values, atol=1e-12)


def test_hopf_lax_of_the_gaussian_potential(gaussian_1d):
    t = 1.0
    u = hopf_lax(gaussian_1d, QuadraticProfile(1.0), t)
    x = gaussian_1d.axes[0].nodes
    exact = x * x / (2.0 * (1.0 + t))
    inner = np.abs(x) <= 2.0
    # a grid minimum never undercuts the continuous one
    assert np.all(u.values >= exact - 1e-12)
    assert np.max(u.values[inner] - exact[inner]) <= 1e-3


def test_convolution_on_a_wider_output_grid(gaussian_1d):
    wider = gaussian_1d.axes[0].padded(20)
    u = inf_convolution(gaussian_1d, DistanceCost.euclidean(), wider)
    assert u.shape == (201,)
    # min over y of y²/2 + |5 − y| sits at y = 1
    assert u.values[-1] == pytest.approx(4.5)


def test_set_operations():
    axis = Axis.symmetric(1.0, 21)
    left = SetOnGrid.from_predicate(axis, lambda x: x < 0.05, ndim=1)
    right = SetOnGrid.from_predicate(axis, lambda x: x > -0.05, ndim=1)
    assert (left & right).cell_count == 1
    assert (left | right).cell_count == 21
    assert (left - right).cell_count == 10
    assert left.complement().cell_count == 10
    assert (left & right) <= left
    assert not left <= right
    assert SetOnGrid.empty(axis).is_empty()
    assert left.mass(MeasureSpec.lebesgue(1)) == pytest.approx(11 * 0.1)


def test_set_mask_must_match_grid():
    with pytest.raises(SantaloError) as excinfo:
        SetOnGrid((Axis.symmetric(1.0, 21),), np.zeros(5, dtype=bool))
    assert excinfo.value.code is ErrorCode.DIMENSION_MISMATCH


def test_enlarging_a_point():
    axis = Axis.symmetric(1.0, 21)
    point = SetOnGrid.from_predicate(axis, lambda x: np.abs(x) < 1e-12, ndim=1)
    grown = enlarge(point, DistanceCost.euclidean(), 0.26)
    assert grown.cell_count == 5
    assert point <= grown
    assert enlarge(SetOnGrid.empty(axis), DistanceCost.euclidean(), 1.0).is_empty()


def test_negative_enlargement_needs_an_inner_product_cost():
    axis = Axis.symmetric(1.0, 21)
    point = SetOnGrid.from_predicate(axis, lambda x: np.abs(x) < 1e-12, ndim=1)
    with pytest.raises(SantaloError) as excinfo:
        enlarge(point, DistanceCost.euclidean(), -0.5)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR


def test_negative_enlargement_of_an_interval():
    axis = Axis.symmetric(2.0, 41)
    interval = SetOnGrid.from_predicate(axis, lambda x: np.abs(x) <= 1.0 + 1e-9, ndim=1)
    # {x : max_{|y| ≤ 1} x·y > 0.95} = {|x| > 0.95}
    grown = enlarge(interval, InnerProductCost(MonotoneMap.identity()), -0.95)
    np.testing.assert_array_equal(grown.mask, np.abs(axis.nodes) > 0.95)


# -- checks ----------------------------------------------------------------------------


def test_unsupported_pairs_are_rejected():
    with pytest.raises(SantaloError) as excinfo:
        require_supported_pair(MeasureSpec.lebesgue(1), InnerProductCost(MonotoneMap.identity()))
    assert excinfo.value.code is ErrorCode.UNSUPPORTED_PAIR
    with pytest.raises(SantaloError) as gaussian:
        require_supported_pair(MeasureSpec.gaussian(), HopfLaxCost(QuadraticProfile(1.0), 1.0))
    assert gaussian.value.code is ErrorCode.UNSUPPORTED_PAIR
    require_supported_pair(MeasureSpec.gaussian(), DistanceCost.euclidean())


def test_comparison_of_a_translated_cone(shifted_abs):
    lebesgue = MeasureSpec.lebesgue(1)
    for cost in (DistanceCost.euclidean(), HopfLaxCost(QuadraticProfile(1.0), 0.5)):
        report = comparison_theorem_check(shifted_abs, cost, lebesgue)
        assert report.verdict, report.failures
        assert {row.form for row in report.rows} == {"sublevel", "superlevel"}
        assert all(row.level < report.details["level_cap"] for row in report.rows)


@pytest.mark.parametrize("seed", range(2))
def test_comparison_on_random_instances(seed):
    f, _ = random_lipschitz_1d(seed)
    report = comparison_theorem_check(f, DistanceCost.euclidean(), MeasureSpec.lebesgue(1))
    assert report.verdict
    assert report.columns[:5] == ("lambda", "mass_lhs", "mass_rhs", "slack", "verdict")


def test_hopf_lax_comparison_over_times(shifted_abs):
    report = hopf_lax_comparison_check(shifted_abs, (0.25, 1.0), levels=16)
    assert report.verdict
    assert {row.t for row in report.rows} == {0.25, 1.0}
    assert all(row.form == "sublevel" for row in report.rows)


def test_decomposition_of_the_cone():
    f = GridFunction.from_callable(np.abs, Axis.symmetric(3.0, 121))
    report = decomposition_check(f, DistanceCost.euclidean(), 1.01)
    assert report.verdict, report.details
    assert report.details["union_inside"]
    residuals = report.details["residual_cells"]
    assert residuals == sorted(residuals, reverse=True)


def test_hopf_lax_semigroup(gaussian_1d):
    report = hopf_lax_semigroup_check(gaussian_1d, 0.5, 0.25)
    assert report.verdict
    assert report.details["nodes"] > 0


def test_hamilton_jacobi_residual_is_small(gaussian_1d):
    assert hamilton_jacobi_residual(gaussian_1d, 1.0) < 0.05


def test_cost_transfer_is_exact():
    axis = Axis.symmetric(2.0, 41)
    disc = SetOnGrid.from_predicate(axis, lambda x, y: x * x + y * y < 0.5, ndim=2)
    alpha = MonotoneMap.from_callable(lambda d: d + d * d, np.linspace(0.0, 20.0, 2001), name="d+d^2")
    report = cost_transfer_check(disc, alpha, 0.4321)
    assert report.verdict
    assert report.details["mismatched_cells"] == 0
    assert report.details["cells"] > disc.cell_count


def test_cost_transfer_needs_a_strict_map():
    axis = Axis.symmetric(1.0, 11)
    flat = MonotoneMap(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 1.0]))
    with pytest.raises(SantaloError) as excinfo:
        cost_transfer_check(SetOnGrid.empty(axis), flat, 0.5)
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED
