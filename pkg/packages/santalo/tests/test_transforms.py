"""Tests for the Legendre, polar and T-transforms and for planar convex bodies."""

import math

import numpy as np
import pytest

from santalo.commons import ErrorCode, SantaloError
from santalo.core import Axis, GridFunction, MonotoneMap, QuadraticProfile
from santalo.core.grid import grid_points
from santalo.transforms import (
    BodyDocument,
    SupportBody2D,
    TransformKind,
    biconjugation_check,
    legendre_at,
    legendre_grid,
    legendre_profile,
    order_reversal_check,
    polar_at,
    polar_complement_check,
    polar_level_identity_check,
    polar_profile,
    polar_transform,
    require_geometric_convex,
    santalo_set_check,
    t_transform,
    transform_comparison_check,
)


def _asinh() -> MonotoneMap:
    return MonotoneMap.from_callable(np.arcsinh, np.linspace(-20.0, 20.0, 4001), name="asinh")


# -- transforms ------------------------------------------------------------------------


def test_legendre_of_the_gaussian_potential(gaussian_1d):
    slopes = Axis.symmetric(2.0, 81)
    conjugate = legendre_grid(gaussian_1d, slopes)
    np.testing.assert_allclose(conjugate.values, slopes.nodes**2 / 2.0, atol=1e-12)


def test_iterated_passes_match_the_direct_maximum(gaussian_2d):
    out = (Axis.symmetric(1.5, 13), Axis.symmetric(1.0, 9))
    conjugate = legendre_grid(gaussian_2d, out)
    direct = legendre_at(gaussian_2d, grid_points(out))
    np.testing.assert_allclose(conjugate.values.ravel(), direct, atol=1e-12)


def test_profile_transforms():
    np.testing.assert_allclose(legendre_profile(QuadraticProfile(1.0), [0.0, 1.0, 2.0]), [0.0, 0.5, 2.0])
    np.testing.assert_allclose(polar_profile(QuadraticProfile(2.0), [1.0, 2.0]), [0.25, 1.0])


def test_polar_of_the_gaussian_potential(gaussian_1d):
    values = polar_at(gaussian_1d, np.array([[0.0], [1.0], [1.5], [2.0]]))
    assert values[0] == 0.0
    np.testing.assert_allclose(values[1:], [0.5, 1.125, 2.0], rtol=1e-3)
    # the sampled supremum only under-reports
    assert np.all(values[1:] <= np.array([0.5, 1.125, 2.0]) + 1e-12)


def test_polar_transform_is_nonnegative_and_even(gaussian_2d):
    polar = polar_transform(gaussian_2d, (Axis.symmetric(1.5, 21), Axis.symmetric(1.5, 21)))
    assert polar.finite_min >= 0.0
    assert polar.values[polar.origin_index()] == 0.0
    assert polar.is_even()


def test_t_transform_is_nonnegative(gaussian_1d):
    transformed = t_transform(gaussian_1d, _asinh(), Axis.symmetric(2.0, 41))
    assert transformed.finite_min >= -1e-12
    assert transformed.values[-1] > 0.0


def test_t_transform_needs_rho_vanishing_at_zero(gaussian_1d):
    shifted = MonotoneMap(np.array([-1.0, 1.0]), np.array([0.0, 2.0]))
    with pytest.raises(SantaloError) as excinfo:
        t_transform(gaussian_1d, shifted)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR


@pytest.mark.parametrize(
    "fn",
    [
        lambda x: np.abs(x - 1.0),
        lambda x: x * x - 0.5,
        lambda x: np.where(x > 0, 2.0 * x, -x),
    ],
    ids=["not-zero-at-origin", "negative", "odd-slopes"],
)
def test_geometric_convex_class_is_enforced(fn):
    f = GridFunction.from_callable(fn, Axis.symmetric(2.0, 41))
    with pytest.raises(SantaloError) as excinfo:
        require_geometric_convex(f)
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED
    with pytest.raises(SantaloError):
        polar_transform(f)


# -- comparisons -----------------------------------------------------------------------


@pytest.mark.parametrize("kind", [TransformKind.LEGENDRE, TransformKind.POLAR])
def test_radial_functions_compare_equal_to_their_rearrangement(gaussian_2d, kind):
    report = transform_comparison_check(gaussian_2d, kind)
    assert report.verdict, report.failures
    assert report.transform == kind.value
    assert report.rows


def test_t_transform_comparison(gaussian_2d):
    report = transform_comparison_check(gaussian_2d, "t", rho=_asinh())
    assert report.verdict
    assert report.transform == "t(asinh)"


def test_t_transform_comparison_needs_rho(gaussian_2d):
    with pytest.raises(SantaloError) as excinfo:
        transform_comparison_check(gaussian_2d, TransformKind.T)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR


def test_polar_level_identity(gaussian_1d):
    report = polar_level_identity_check(gaussian_1d)
    assert report.verdict, report.failures
    assert report.details["node_mismatches"] == 0


def test_biconjugation_of_the_gaussian_potential(gaussian_1d):
    report = biconjugation_check(gaussian_1d)
    assert report.verdict
    assert report.details["max_deviation"] <= 1e-9
    assert report.details["below"]


def test_order_reversal(gaussian_1d):
    bump = GridFunction.from_callable(lambda x: 0.25 * x * x, gaussian_1d.axes)
    larger = gaussian_1d.with_values(gaussian_1d.values + bump.values)
    assert order_reversal_check(gaussian_1d, larger).verdict
    with pytest.raises(SantaloError) as excinfo:
        order_reversal_check(larger, gaussian_1d)
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED


# -- bodies ----------------------------------------------------------------------------


def test_disc_areas():
    disc = SupportBody2D.disc()
    assert disc.area == pytest.approx(math.pi, rel=1e-3)
    assert disc.polar_area == pytest.approx(math.pi, rel=1e-3)
    np.testing.assert_allclose(disc.polar().support, 1.0)


def test_square_and_its_polar_diamond():
    square = SupportBody2D.square()
    assert square.area == pytest.approx(4.0)
    assert square.polar_area == pytest.approx(2.0)
    report = santalo_set_check(square)
    assert report.verdict
    assert report.details["volume_product"] == pytest.approx(8.0)


@pytest.mark.parametrize("seed", range(5))
def test_random_bodies_satisfy_the_set_inequality(seed):
    report = santalo_set_check(SupportBody2D.random(seed))
    assert report.verdict
    assert report.details["volume_product"] <= math.pi**2 + 1e-9


def test_ellipse_is_nearly_extremal():
    report = santalo_set_check(SupportBody2D.ellipse(2.0, 0.5))
    assert report.verdict
    assert 0.0 <= report.details["deficit"] <= 0.05


def test_body_validation():
    with pytest.raises(SantaloError):
        SupportBody2D(np.ones(7))
    with pytest.raises(SantaloError):
        SupportBody2D(np.r_[np.ones(4), 2.0 * np.ones(4)])
    with pytest.raises(SantaloError):
        SupportBody2D.regular_polygon(3)
    hexagon = SupportBody2D.regular_polygon(6, directions=12)
    assert hexagon.area == pytest.approx(3.0 * math.sqrt(3.0) / 2.0, rel=1e-9)


def test_containment_and_support():
    disc = SupportBody2D.disc()
    inside, outside = disc.contains(np.array([[0.5, 0.5], [0.9, 0.9]]))
    assert inside and not outside
    assert disc.support_at(np.array([[2.0, 0.0]]))[0] == pytest.approx(2.0, rel=1e-3)


def test_body_document():
    disc = SupportBody2D.disc(directions=16)
    restored = SupportBody2D.from_document(BodyDocument.model_validate(disc.to_document().model_dump()))
    np.testing.assert_array_equal(restored.support, disc.support)
    with pytest.raises(SantaloError):
        SupportBody2D.from_document(BodyDocument(angles=[0.0] * 16, support=[1.0] * 16))


def test_polar_complement_of_the_disc():
    report = polar_complement_check(SupportBody2D.disc(), MonotoneMap.identity(), 1.0)
    assert report.verdict, report.details
    assert report.details["scale"] == pytest.approx(1.0)


def test_polar_complement_rejects_nonpositive_eps():
    with pytest.raises(SantaloError) as excinfo:
        polar_complement_check(SupportBody2D.disc(), MonotoneMap.identity(), 0.0)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR
