"""Tests for the Bessel flow, the product functional and the flow identities."""

import math

import numpy as np
import pytest

from santalo.commons import ErrorCode, SantaloError
from santalo.core import ConvexProfile, QuadraticProfile, RandomConvexSpec, random_profile
from santalo.flow import (
    BesselFlow,
    DualKind,
    FlowSettings,
    bessel_semigroup,
    conjugate_flow,
    cordero_residual,
    flow_trace,
    gaussian_flow,
    integrand_identity_check,
    integrand_identity_from_samples,
    log_heat_residual,
    product_functional,
    product_functional_quad,
    santalo_bound,
)
from santalo.flow.kernels import SMALL_A, log_derivative, log_derivative_prime, log_sphere_excess

# -- kernels ---------------------------------------------------------------------------


def test_sphere_excess_at_zero():
    zero = np.array([0.0])
    assert log_sphere_excess(zero, 1)[0] == pytest.approx(math.log(2.0))
    assert log_sphere_excess(zero, 2)[0] == pytest.approx(math.log(2.0 * math.pi))
    assert log_sphere_excess(zero, 3)[0] == pytest.approx(math.log(4.0 * math.pi))


@pytest.mark.parametrize("n", [2, 3])
def test_small_argument_branches_are_continuous(n):
    a = np.array([SMALL_A * (1 - 1e-9), SMALL_A * (1 + 1e-9)])
    for fn in (log_sphere_excess, log_derivative, log_derivative_prime):
        below, above = fn(a, n)
        assert below == pytest.approx(above, rel=1e-6, abs=1e-9)


def test_log_derivative_saturates():
    big = np.array([200.0])
    for n in (1, 2, 3):
        assert log_derivative(big, n)[0] == pytest.approx(1.0, abs=1e-2)
        assert 0.0 <= log_derivative_prime(big, n)[0] < 1e-2


# -- functional ------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gaussian_attains_the_bound(n):
    for kind in DualKind:
        assert product_functional(QuadraticProfile(1.0), n, kind) == pytest.approx(santalo_bound(n), rel=1e-12)
    assert santalo_bound(n) == pytest.approx((2.0 * math.pi) ** n)


def test_linear_profile_product():
    # Ψ = r has mass 1 and its conjugate is 0 on [0, 1]
    assert product_functional(ConvexProfile.linear(1.0), 1) == pytest.approx(4.0)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("n", [1, 2])
def test_product_functional_matches_quadrature(seed, n):
    profile = random_profile(RandomConvexSpec(seed=seed, knots=5))
    exact = product_functional(profile, n)
    assert exact == pytest.approx(product_functional_quad(profile, n), rel=1e-6)
    assert exact <= santalo_bound(n) * (1 + 1e-9)


# -- semigroup -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gaussian_flow_matches_the_closed_form(n):
    radii = np.array([0.0, 0.5, 1.0, 2.0, 3.0])
    t = 0.5
    sample = bessel_semigroup(QuadraticProfile(1.0), t, n, radii)
    psi, _ = gaussian_flow(radii, t, n)
    np.testing.assert_allclose(sample.values, psi, atol=1e-6)
    np.testing.assert_allclose(sample.first, radii / (1.0 + 2.0 * t), atol=1e-6)
    np.testing.assert_allclose(sample.second, 1.0 / (1.0 + 2.0 * t), atol=1e-5)


def test_gaussian_closed_form_is_a_conjugate_pair():
    rho = np.linspace(0.0, 3.0, 7)
    t = 0.75
    _, conjugate = gaussian_flow(rho, t, 2)
    s = rho * (1.0 + 2.0 * t)
    psi, _ = gaussian_flow(s, t, 2)
    np.testing.assert_allclose(conjugate, rho * s - psi, atol=1e-12)


def test_mass_is_conserved():
    flow = BesselFlow(QuadraticProfile(1.0), 2)
    assert flow.mass(0.5) == pytest.approx(flow.mass(0.0), rel=1e-6)
    assert flow.alpha(0.5) == pytest.approx(flow.alpha(0.0), rel=1e-6)


def test_flow_state_reports_its_curvature():
    state = BesselFlow(QuadraticProfile(1.0), 1).state(0.5)
    assert state.min_curvature == pytest.approx(0.5, rel=1e-2)


def test_flow_stops_at_the_convexity_floor():
    # Ψ_t'' = 1/(1 + 2t) = 1/2 for the Gaussian at t = 1/2
    settings = FlowSettings(convexity_floor=0.75)
    with pytest.raises(SantaloError) as excinfo:
        BesselFlow(QuadraticProfile(1.0), 1, settings).state(0.5)
    assert excinfo.value.code is ErrorCode.CONVEXITY_FLOOR
    assert excinfo.value.details["t"] == 0.5
    assert excinfo.value.details["radius"] >= 0.0
    with pytest.raises(SantaloError) as traced:
        flow_trace(QuadraticProfile(1.0), 1, [0.0, 0.5], residual="none", settings=settings)
    assert traced.value.code is ErrorCode.CONVEXITY_FLOOR


def test_initial_state_is_exact():
    state = BesselFlow(QuadraticProfile(1.0), 1).state(0.0)
    assert state.mass == pytest.approx(math.sqrt(math.pi / 2.0))
    assert state.product == pytest.approx(santalo_bound(1))


def test_flow_rejects_bad_arguments():
    with pytest.raises(SantaloError) as dimension:
        BesselFlow(QuadraticProfile(1.0), 4)
    assert dimension.value.code is ErrorCode.VALIDATION_ERROR
    flow = BesselFlow(QuadraticProfile(1.0), 1)
    with pytest.raises(SantaloError):
        flow.sample(0.0)
    with pytest.raises(SantaloError):
        flow.state(-1.0)
    with pytest.raises(SantaloError) as slopes:
        flow.inverse_slope(0.5, np.array([-1.0]))
    assert slopes.value.code is ErrorCode.PRECONDITION_FAILED


def test_conjugate_flow_of_the_gaussian():
    t = 0.5
    rho = np.array([0.2, 0.5, 1.0, 1.5])
    sample = conjugate_flow(QuadraticProfile(1.0), 1, t, rho)
    _, exact = gaussian_flow(rho, t, 1)
    np.testing.assert_allclose(sample.values, exact, atol=1e-8)
    np.testing.assert_allclose(sample.first, rho * (1.0 + 2.0 * t), atol=1e-8)
    np.testing.assert_allclose(sample.second, 1.0 + 2.0 * t, rtol=1e-5)


# -- residuals -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2])
def test_conjugate_equation_residual_for_the_gaussian(n):
    report = cordero_residual(QuadraticProfile(1.0), n, 0.5)
    assert report.passed, report
    assert report.equation == "conjugate"
    assert report.nodes > 0


def test_log_heat_residual_for_the_gaussian():
    report = log_heat_residual(QuadraticProfile(1.0), 2, 0.5)
    assert report.passed, report


def test_residual_needs_a_time_step_below_t():
    with pytest.raises(SantaloError) as excinfo:
        cordero_residual(QuadraticProfile(1.0), 1, 0.5, dt=0.5)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR


@pytest.mark.parametrize("eps", [0.0, 0.3])
def test_integrand_identity_holds_algebraically(eps):
    rng = np.random.default_rng(7)
    r = rng.uniform(0.1, 3.0, 200)
    first = rng.uniform(0.1, 5.0, 200)
    second = rng.uniform(0.1, 5.0, 200)
    report = integrand_identity_check(r, first, second, eps)
    assert report.verdict
    assert report.details["min_rhs"] >= 0.0


def test_integrand_identity_from_samples():
    r = np.linspace(0.5, 3.0, 101)
    assert integrand_identity_from_samples(r, r * r + r).verdict


def test_integrand_identity_needs_positive_derivatives():
    with pytest.raises(SantaloError) as excinfo:
        integrand_identity_check(np.array([1.0]), np.array([-1.0]), np.array([1.0]))
    assert excinfo.value.code is ErrorCode.PRECONDITION_FAILED


# -- traces ----------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2])
def test_gaussian_trace_is_stationary(n):
    trace = flow_trace(QuadraticProfile(1.0), n, [0.0, 0.5, 1.0], residual="none")
    assert trace.verdict, trace.failures
    assert [row.t for row in trace.rows] == [0.0, 0.5, 1.0]
    assert trace.details["final_product"] == pytest.approx(santalo_bound(n), rel=1e-6)
    assert trace.columns == ("t", "mass", "alpha", "residual", "verdict")


def test_trace_runs_on_workers():
    serial = flow_trace(QuadraticProfile(1.0), 1, [0.0, 0.25, 1.0], residual="log_heat")
    threaded = flow_trace(QuadraticProfile(1.0), 1, [0.0, 0.25, 1.0], residual="log_heat", workers=3)
    assert [row.alpha for row in threaded.rows] == [row.alpha for row in serial.rows]
    assert serial.rows[0].residual == 0.0


def test_polar_flow_is_unsupported():
    with pytest.raises(SantaloError) as excinfo:
        flow_trace(QuadraticProfile(1.0), 1, [0.0, 1.0], "polar")
    assert excinfo.value.code is ErrorCode.UNSUPPORTED_PAIR


@pytest.mark.parametrize("times", [[0.5, 1.0], [0.0, 1.0, 0.5], []])
def test_trace_times_must_start_at_zero_and_increase(times):
    with pytest.raises(SantaloError) as excinfo:
        flow_trace(QuadraticProfile(1.0), 1, times)
    assert excinfo.value.code is ErrorCode.VALIDATION_ERROR
