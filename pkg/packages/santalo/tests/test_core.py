"""Tests for grids, extended reals, maps, measures, profiles and generators."""

import json
import math

import numpy as np
import pytest

from santalo.commons import ErrorCode, SantaloError
from santalo.core import (
    Axis,
    ConvexProfile,
    GridFunction,
    MeasureSpec,
    MonotoneMap,
    QuadraticProfile,
    RandomConvexSpec,
    decode_extended,
    dumps,
    encode_extended,
    extended_add,
    loads,
    make_radial,
    radial_mass,
    random_even_convex,
    random_grid,
    random_lipschitz_1d,
    random_profile,
    unit_ball_volume,
)
from santalo.flow import quad_radial_mass
from santalo.rearrange import lipschitz_estimate

# -- grids ----------------------------------------------------------------------


def test_symmetric_axis_has_exact_zero_node():
    axis = Axis.symmetric(1.0, 5)
    assert axis.nodes.tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert axis.node_index(0.5) == 3
    assert axis.node_index(0.3) is None


def test_axis_rejects_bad_extents():
    with pytest.raises(SantaloError) as empty:
        Axis(1.0, 1.0, 5)
    assert empty.value.code is ErrorCode.EMPTY_DOMAIN
    with pytest.raises(SantaloError) as single:
        Axis(0.0, 1.0, 1)
    assert single.value.code is ErrorCode.VALIDATION_ERROR


def test_axis_padding_keeps_spacing():
    padded = Axis.symmetric(1.0, 5).padded(2)
    assert (padded.lo, padded.hi, padded.count) == (-2.0, 2.0, 9)
    assert padded.step == pytest.approx(0.5)


@pytest.mark.parametrize(
    ("values", "code"),
    [
        ([0.0, np.nan, 1.0], ErrorCode.NAN_RESULT),
        ([0.0, -np.inf, 1.0], ErrorCode.VALIDATION_ERROR),
        ([np.inf, np.inf, np.inf], ErrorCode.EMPTY_DOMAIN),
    ],
)
def test_grid_function_rejects_invalid_values(values, code):
    with pytest.raises(SantaloError) as excinfo:
        GridFunction.on_interval(0.0, 1.0, values)
    assert excinfo.value.code is code


def test_grid_function_rejects_shape_mismatch():
    with pytest.raises(SantaloError) as excinfo:
        GridFunction((Axis(0.0, 1.0, 4),), np.zeros(3))
    assert excinfo.value.code is ErrorCode.DIMENSION_MISMATCH


def test_grid_function_accepts_negative_infinity_when_allowed():
    f = GridFunction((Axis(0.0, 1.0, 3),), np.array([0.0, -np.inf, 1.0]), allow_negative_infinity=True)
    assert np.isneginf(f.values[1])


def test_evenness_compares_signed_infinities():
    axis = Axis.symmetric(1.0, 3)
    assert GridFunction((axis,), np.array([np.inf, 0.0, np.inf])).is_even()
    mirrored = GridFunction((axis,), np.array([np.inf, 0.0, -np.inf]), allow_negative_infinity=True)
    assert not mirrored.is_even()


def test_grid_dimension_is_capped():
    with pytest.raises(SantaloError) as excinfo:
        GridFunction.from_callable(lambda *c: sum(c), Axis.symmetric(1.0, 3), ndim=4)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR


def test_grid_values_are_read_only(gaussian_1d):
    with pytest.raises(ValueError):
        gaussian_1d.values[0] = 0.0


def test_padding_and_sampling_extend_by_infinity(gaussian_1d):
    padded = gaussian_1d.padded(3)
    assert padded.shape == (167,)
    assert np.isinf(padded.values[:3]).all()
    assert np.isinf(padded.values[-3:]).all()
    inside, outside = gaussian_1d.sample(np.array([[1.0], [10.0]]))
    assert inside == pytest.approx(0.5)
    assert math.isinf(outside)


def test_origin_and_boundary(gaussian_2d):
    assert gaussian_2d.origin_index() == (20, 20)
    assert gaussian_2d.boundary_min() == pytest.approx(4.5)
    assert gaussian_2d.is_even()


def test_make_radial_requires_symmetric_box():
    with pytest.raises(SantaloError) as excinfo:
        make_radial(QuadraticProfile(), 1, Axis(-1.0, 2.0, 31))
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED


# -- extended reals ---------------------------------------------------------------


def test_extended_sum_absorbs_infinity_and_rejects_indeterminate():
    assert np.isposinf(extended_add(np.inf, 1.0))
    with pytest.raises(SantaloError) as excinfo:
        extended_add(np.array([np.inf]), np.array([-np.inf]))
    assert excinfo.value.code is ErrorCode.NAN_RESULT


def test_extended_encoding():
    assert encode_extended(np.inf) == "inf"
    assert encode_extended(-np.inf) == "-inf"
    assert decode_extended("Infinity") == np.inf
    assert decode_extended(2) == 2.0
    with pytest.raises(SantaloError):
        decode_extended("large")


# -- monotone maps ------------------------------------------------------------------


def test_monotone_map_inverse_and_extrapolation():
    doubling = MonotoneMap.linear(2.0)
    assert doubling.generalized_inverse(1.0) == pytest.approx(0.5)
    assert float(doubling(3.0)) == pytest.approx(6.0)
    assert float(doubling(-1.0)) == pytest.approx(-2.0)
    assert MonotoneMap.identity().is_identity
    assert not doubling.is_identity


def test_monotone_map_rejects_decreasing_tables():
    with pytest.raises(SantaloError):
        MonotoneMap(np.array([0.0, 1.0, 2.0]), np.array([0.0, 2.0, 1.0]))


def test_flat_map_never_reaches_higher_levels():
    flat = MonotoneMap(np.array([0.0, 1.0]), np.array([0.0, 0.0]))
    with pytest.raises(SantaloError) as excinfo:
        flat.generalized_inverse(1.0)
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED


# -- measures ------------------------------------------------------------------------


def test_unit_ball_volumes():
    assert unit_ball_volume(1) == pytest.approx(2.0)
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0)


def test_gaussian_cells_carry_unit_mass():
    masses = MeasureSpec.gaussian().axis_masses(Axis.symmetric(3.0, 61))
    assert masses.sum() == pytest.approx(1.0, abs=1e-12)
    assert (masses > 0).all()


def test_gaussian_measure_is_one_dimensional():
    with pytest.raises(SantaloError):
        MeasureSpec(MeasureSpec.gaussian().kind, 2)


def test_mass_coordinate_inverts_radius_for_mass():
    plane = MeasureSpec.lebesgue(2)
    assert plane.mass_coordinate(np.array([[1.0, 0.0]]))[0] == pytest.approx(math.pi)
    assert float(plane.radius_for_mass(math.pi)) == pytest.approx(1.0)
    line = MeasureSpec.gaussian()
    assert float(line.radius_for_mass(0.5)) == pytest.approx(0.0, abs=1e-12)


def test_mass_of_radius_keeps_grid_shape():
    radii = np.hypot(*np.meshgrid(np.linspace(-1.0, 1.0, 5), np.linspace(-1.0, 1.0, 7), indexing="ij"))
    masses = MeasureSpec.lebesgue(2).mass_of_radius(radii)
    assert masses.shape == (5, 7)
    np.testing.assert_allclose(masses, math.pi * radii**2)
    ball = MeasureSpec.lebesgue(3).mass_of_radius(np.full((2, 3, 4), 2.0))
    np.testing.assert_allclose(ball, 32.0 * math.pi / 3.0)


def test_measure_dimension_mismatch(gaussian_2d):
    with pytest.raises(SantaloError) as excinfo:
        MeasureSpec.lebesgue(1).cell_masses(gaussian_2d)
    assert excinfo.value.code is ErrorCode.DIMENSION_MISMATCH


# -- profiles ------------------------------------------------------------------------


def test_profile_validation():
    with pytest.raises(SantaloError):
        ConvexProfile(np.array([0.0, 1.0, 2.0]), np.array([0.0, 2.0, 3.0]), 5.0)
    with pytest.raises(SantaloError):
        ConvexProfile(np.array([0.0, 1.0]), np.array([0.5, 1.0]), 1.0)
    with pytest.raises(SantaloError):
        ConvexProfile(np.array([0.0, 1.0]), np.array([0.0, 2.0]), 1.0)


def test_linear_profile_and_its_duals():
    linear = ConvexProfile.linear(1.0)
    assert float(linear(3.0)) == pytest.approx(3.0)
    legendre = linear.legendre_dual()
    assert float(legendre(0.5)) == 0.0
    assert math.isinf(float(legendre(1.5)))


def test_quadratic_profile_is_self_dual():
    assert QuadraticProfile(1.0).legendre_dual().c == 1.0
    assert QuadraticProfile(2.0).polar_dual().c == pytest.approx(0.5)
    assert QuadraticProfile(1.0).scaled(2.0).c == pytest.approx(4.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_radial_mass_closed_forms(n):
    assert radial_mass(QuadraticProfile(1.0), n) == pytest.approx(2 ** (n / 2) * math.gamma(n / 2) / 2)
    assert radial_mass(ConvexProfile.linear(1.0), n) == pytest.approx(math.factorial(n - 1))


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_radial_mass_matches_quadrature(seed, n):
    profile = random_profile(RandomConvexSpec(seed=seed, knots=5))
    assert radial_mass(profile, n) == pytest.approx(quad_radial_mass(profile, n), rel=1e-6)


@pytest.mark.parametrize("seed", [0, 5, 11])
def test_exact_duals_match_knot_maxima(seed):
    profile = random_profile(RandomConvexSpec(seed=seed, knots=6))
    knots, values = profile.knots, profile.values

    slopes = np.linspace(0.0, 0.95 * profile.terminal_slope, 41)
    brute_legendre = np.max(slopes[:, None] * knots[None, :] - values[None, :], axis=1)
    np.testing.assert_allclose(profile.legendre_dual()(slopes), brute_legendre, rtol=1e-9, atol=1e-9)

    radii = np.linspace(0.0, 5.0, 41)
    ratios = (radii[:, None] * knots[None, 1:] - 1.0) / values[None, 1:]
    brute_polar = np.maximum(ratios.max(axis=1), radii / profile.terminal_slope)
    np.testing.assert_allclose(profile.polar_dual()(radii), brute_polar, rtol=1e-9, atol=1e-9)


def test_scaling_rescales_the_argument():
    profile = random_profile(RandomConvexSpec(seed=4))
    r = np.linspace(0.0, 3.0, 13)
    np.testing.assert_allclose(profile.scaled(2.0)(r), profile(2.0 * r), rtol=1e-12, atol=1e-12)


# -- documents -------------------------------------------------------------------------


def test_grid_document_spells_infinity(gaussian_1d):
    padded = gaussian_1d.padded(1)
    text = dumps(padded)
    assert json.loads(text)["values"][0] == "inf"
    restored = loads(text)
    assert isinstance(restored, GridFunction)
    np.testing.assert_array_equal(restored.values, padded.values)


def test_profile_document_with_infinite_terminal_slope():
    profile = ConvexProfile.linear(1.0).legendre_dual()
    restored = loads(dumps(profile))
    assert isinstance(restored, ConvexProfile)
    assert math.isinf(restored.terminal_slope)
    np.testing.assert_array_equal(restored.knots, profile.knots)


# -- generators ---------------------------------------------------------------------------


def test_generators_are_reproducible():
    spec = RandomConvexSpec(seed=17, n=2, nodes=31, half_width=3.0)
    np.testing.assert_array_equal(random_grid(spec).values, random_grid(spec).values)
    assert random_profile(spec).terminal_slope == random_profile(spec).terminal_slope


def test_random_grid_is_minimized_at_the_translation():
    spec = RandomConvexSpec(seed=3, n=1, nodes=121, half_width=3.0, translation=1.0)
    f = random_grid(spec)
    assert f.axes[0].nodes[int(np.argmin(f.values))] == pytest.approx(1.0)
    assert f.finite_min == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_random_lipschitz_constant_is_exact(seed):
    f, constant = random_lipschitz_1d(seed)
    assert lipschitz_estimate(f) == pytest.approx(constant, rel=1e-9)


@pytest.mark.parametrize("seed", range(3))
def test_random_even_convex_is_geometric(seed):
    f = random_even_convex(seed, Axis.symmetric(2.0, 21))
    assert f.is_even()
    assert f.values[f.origin_index()] == 0.0
    assert f.finite_min >= 0.0
