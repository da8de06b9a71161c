"""Tests for level-set masses, rearrangements and the Lipschitz checks."""

import math

import numpy as np
import pytest
from scipy.special import ndtr

from santalo.commons import ErrorCode, SantaloError
from santalo.core import Axis, GridFunction, MeasureSpec, RandomConvexSpec, random_grid, random_lipschitz_1d
from santalo.rearrange import (
    decreasing_rearrangement,
    enlargement_lipschitz_check,
    equimeasurability_check,
    gaussian_isoperimetry_check,
    gaussian_mass,
    increasing_rearrangement,
    layer_cake_check,
    lipschitz_estimate,
    lipschitz_preservation_check,
    rearrangement_level_check,
    steepest_levels,
    sublevel_mass,
    superlevel_mass,
)


def test_level_masses_count_cells(shifted_abs):
    lebesgue = MeasureSpec.lebesgue(1)
    below = sublevel_mass(shifted_abs, 1.025, lebesgue)
    # nodes 0, 0.05, ..., 2: 41 cells of width 0.05
    assert below.mass == pytest.approx(41 * 0.05)
    assert below.error_bound > 0
    above = superlevel_mass(shifted_abs, 1.025, lebesgue)
    assert below.mass + above.mass == pytest.approx(121 * 0.05)


def test_increasing_rearrangement_centres_a_translate(shifted_abs):
    rearranged = increasing_rearrangement(shifted_abs, MeasureSpec.lebesgue(1))
    assert rearranged.axes[0].is_symmetric
    assert rearranged.is_even()
    assert rearranged.finite_min == pytest.approx(0.0)
    assert rearranged.values[60] == pytest.approx(0.0)


def test_rearranging_a_symmetric_decreasing_function_is_identity():
    axis = Axis.symmetric(2.0, 81)
    f = GridFunction.from_callable(lambda x: np.exp(-x * x), axis)
    rearranged = decreasing_rearrangement(f, MeasureSpec.lebesgue(1))
    np.testing.assert_allclose(rearranged.values, f.values, atol=1e-12)


def test_decreasing_rearrangement_needs_nonnegative_values():
    f = GridFunction.on_interval(-1.0, 1.0, [-1.0, 0.0, 1.0])
    with pytest.raises(SantaloError) as excinfo:
        decreasing_rearrangement(f, MeasureSpec.lebesgue(1))
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED


def test_gaussian_rearrangement_is_monotone_on_the_line(shifted_abs):
    weight = GridFunction(shifted_abs.axes, np.exp(-shifted_abs.values))
    rearranged = decreasing_rearrangement(weight, MeasureSpec.gaussian())
    assert np.all(np.diff(rearranged.values) <= 0)


def test_infinite_nodes_stay_outside_the_rearranged_support():
    f = GridFunction.on_interval(-1.0, 1.0, [np.inf, 0.0, 1.0, np.inf, np.inf])
    rearranged = increasing_rearrangement(f, MeasureSpec.lebesgue(1))
    assert rearranged.values[2] == 0.0
    assert np.isfinite(rearranged.values).sum() <= 2


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("measure", [MeasureSpec.lebesgue(1), MeasureSpec.gaussian()], ids=["lebesgue", "gaussian"])
def test_equimeasurability_on_random_instances(seed, measure):
    f = random_grid(RandomConvexSpec(seed=seed, n=1, half_width=4.0, nodes=161, translation=0.5))
    weight = GridFunction(f.axes, np.exp(-f.values))
    report = equimeasurability_check(weight, measure, count=32)
    assert report.verdict, report.failures


def test_equimeasurability_in_the_plane():
    f = random_grid(RandomConvexSpec(seed=2, n=2, half_width=3.0, nodes=41))
    report = equimeasurability_check(GridFunction(f.axes, np.exp(-f.values)), MeasureSpec.lebesgue(2), count=16)
    assert report.verdict
    assert report.columns == ("lambda", "mass_f", "mass_rearranged", "error_bound", "verdict")


def test_planar_quadratic_rearranges_to_a_radial_quadratic():
    axis = Axis.symmetric(3.0, 61)
    f = GridFunction.from_callable(lambda x, y: 0.5 * (x * x + 2.0 * y * y), (axis, axis))
    rearranged = increasing_rearrangement(f, MeasureSpec.lebesgue(2))
    assert rearranged.shape == f.shape
    assert rearranged.is_even()
    x, y = rearranged.coordinates
    inside = np.hypot(x, y) <= 2.0
    # the ellipse {f <= λ} has area π√2 λ, so the ball of equal area has r² = √2 λ
    expected = (x * x + y * y) / math.sqrt(2.0)
    np.testing.assert_allclose(rearranged.values[inside], expected[inside], atol=0.1)


@pytest.mark.parametrize("seed", range(3))
def test_rearranged_level_sets(seed):
    f = random_grid(RandomConvexSpec(seed=seed, n=1, half_width=4.0, nodes=161, translation=-0.7))
    assert rearrangement_level_check(f, MeasureSpec.lebesgue(1), count=24).verdict
    assert rearrangement_level_check(f, MeasureSpec.gaussian(), count=24).verdict


def test_layer_cake_matches_direct_sum(gaussian_1d):
    report = layer_cake_check(gaussian_1d, MeasureSpec.lebesgue(1), levels=512)
    assert report.verdict
    assert report.details["direct"] == pytest.approx(math.sqrt(2.0 * math.pi), rel=1e-3)


def test_gaussian_half_line_is_extremal():
    report = gaussian_isoperimetry_check([(-np.inf, 0.3)], [0.0, 0.1, 0.5, 1.0])
    assert report.verdict
    assert abs(report.details["min_margin"]) <= 1e-12


def test_gaussian_isoperimetry_on_a_union():
    report = gaussian_isoperimetry_check([(-1.0, -0.5), (0.2, 0.4), (0.3, 1.1)], [0.05, 0.25, 1.0])
    assert report.verdict
    assert report.details["base_mass"] == pytest.approx(gaussian_mass([(-1.0, -0.5), (0.2, 1.1)]))
    assert gaussian_mass([(-np.inf, np.inf)]) == pytest.approx(1.0)
    assert gaussian_mass([(0.0, 1.0)]) == pytest.approx(ndtr(1.0) - 0.5)


def test_gaussian_isoperimetry_rejects_bad_input():
    with pytest.raises(SantaloError):
        gaussian_isoperimetry_check([], [0.1])
    with pytest.raises(SantaloError):
        gaussian_isoperimetry_check([(0.0, 1.0)], [-0.1])


def test_lipschitz_estimate_rejects_infinite_nodes():
    f = GridFunction.on_interval(0.0, 1.0, [0.0, 1.0, np.inf])
    with pytest.raises(SantaloError) as excinfo:
        lipschitz_estimate(f)
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED
    assert lipschitz_estimate(f, mask=np.array([True, True, False])) == pytest.approx(2.0)


@pytest.mark.parametrize("seed", range(6))
def test_rearrangement_preserves_lipschitz_constant(seed):
    f, _ = random_lipschitz_1d(seed)
    report = lipschitz_preservation_check(f)
    assert report.holds
    assert report.window_nodes > 0


@pytest.mark.parametrize("seed", range(4))
def test_enlargement_characterizes_the_constant(seed):
    f, _ = random_lipschitz_1d(seed)
    constant = lipschitz_estimate(f)
    levels = steepest_levels(f, (0.25, 0.5))
    eps = [0.1, 0.25, 0.5, 1.0]
    assert enlargement_lipschitz_check(f, constant, eps, levels).holds
    failing = enlargement_lipschitz_check(f, 0.9 * constant, eps, levels)
    assert not failing.holds
    assert failing.violations[0].cells >= 1


def test_steepest_levels_sit_just_above_the_steep_pair():
    f = GridFunction.from_callable(lambda x: np.where(x > 0, 3.0 * x, -x), Axis.symmetric(2.0, 41))
    (level,) = steepest_levels(f)
    assert level == pytest.approx(0.15)
