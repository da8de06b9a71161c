"""Bessel semigroup on radial profiles, the product functional and its monotone flow."""

from santalo.flow.functional import (
    DualKind,
    dual_profile,
    product_functional,
    product_functional_quad,
    quad_radial_mass,
    santalo_bound,
)
from santalo.flow.semigroup import BesselFlow, FlowSettings, FlowState, RadialSample, bessel_semigroup
from santalo.flow.trace import (
    ResidualReport,
    conjugate_flow,
    cordero_residual,
    flow_trace,
    gaussian_flow,
    integrand_identity_check,
    integrand_identity_from_samples,
    log_heat_residual,
)

__all__ = [
    # Semigroup
    "BesselFlow",
    "FlowSettings",
    "FlowState",
    "RadialSample",
    "bessel_semigroup",
    "gaussian_flow",
    "conjugate_flow",
    # Functional
    "DualKind",
    "dual_profile",
    "product_functional",
    "product_functional_quad",
    "quad_radial_mass",
    "santalo_bound",
    # Trace and identities
    "ResidualReport",
    "flow_trace",
    "cordero_residual",
    "log_heat_residual",
    "integrand_identity_check",
    "integrand_identity_from_samples",
]
