"""The radial product functional (nω_n)²·∫e^{−Ψ}r^{n−1}dr·∫e^{−AΨ}r^{n−1}dr."""

from enum import Enum

import numpy as np
from scipy.integrate import quad

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.core.measure import unit_ball_volume
from santalo.core.profile import ConvexProfile, QuadraticProfile, RadialProfile, radial_mass

QUAD_RTOL = 1e-8
QUAD_LIMIT = 400


class DualKind(str, Enum):
    LEGENDRE = "legendre"
    POLAR = "polar"


def dual_profile(profile: RadialProfile, kind: DualKind | str) -> RadialProfile:
    if DualKind(kind) is DualKind.LEGENDRE:
        return profile.legendre_dual()
    return profile.polar_dual()


def santalo_bound(n: int) -> float:
    """(2π)^n, attained by Gaussians."""
    return float((2.0 * np.pi) ** n)


def _area(n: int) -> float:
    return n * unit_ball_volume(n)


def _checked(value: float, what: str) -> float:
    if not (np.isfinite(value) and value > 0):
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message=f"{what} integral is not finite and positive",
            details={"value": value},
        )
    return value


def product_functional(profile: RadialProfile, n: int, kind: DualKind | str = DualKind.LEGENDRE) -> float:
    """(nω_n)² times the radial masses of Ψ and of its Legendre or polar dual.

    Both masses are exact piecewise closed forms.

    Raises:
        SantaloError: ``precondition_failed`` when either integral is not finite.
    """
    mass = _checked(radial_mass(profile, n), "profile")
    dual = _checked(radial_mass(dual_profile(profile, kind), n), "dual")
    return float(_area(n) ** 2 * mass * dual)


def quad_radial_mass(profile: RadialProfile, n: int) -> float:
    """∫₀^∞ e^{−Ψ} r^{n−1} dr by adaptive quadrature, split at the knots."""

    def integrand(r: float) -> float:
        return float(np.exp(-profile(r)) * r ** (n - 1))

    if isinstance(profile, QuadraticProfile):
        return float(quad(integrand, 0.0, np.inf, epsrel=QUAD_RTOL, limit=QUAD_LIMIT)[0])
    if not isinstance(profile, ConvexProfile):
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="unsupported profile kind")
    knots = profile.knots
    total = 0.0
    for lo, hi in zip(knots[:-1], knots[1:], strict=True):
        total += quad(integrand, lo, hi, epsrel=QUAD_RTOL, limit=QUAD_LIMIT)[0]
    if np.isfinite(profile.terminal_slope):
        total += quad(integrand, knots[-1], np.inf, epsrel=QUAD_RTOL, limit=QUAD_LIMIT)[0]
    return float(total)


def product_functional_quad(profile: RadialProfile, n: int, kind: DualKind | str = DualKind.LEGENDRE) -> float:
    """Quadrature oracle for :func:`product_functional`."""
    mass = _checked(quad_radial_mass(profile, n), "profile")
    dual = _checked(quad_radial_mass(dual_profile(profile, kind), n), "dual")
    return float(_area(n) ** 2 * mass * dual)
