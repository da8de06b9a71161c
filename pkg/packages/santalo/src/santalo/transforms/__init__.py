"""Legendre, polar and T-transforms, planar convex bodies and their comparisons."""

from santalo.transforms.bodies import (
    BodyDocument,
    SupportBody2D,
    equal_area_disc_polar_area,
    polar_body,
    polar_complement_check,
    santalo_set_check,
)
from santalo.transforms.checks import (
    TransformKind,
    TransformSettings,
    apply_transform,
    biconjugation_check,
    dual_axes,
    order_reversal_check,
    polar_level_identity_check,
    polar_level_identity_nodes,
    transform_comparison_check,
)
from santalo.transforms.legendre import legendre_at, legendre_grid, legendre_profile
from santalo.transforms.polar import (
    polar_at,
    polar_profile,
    polar_transform,
    polar_transform_detailed,
    require_geometric_convex,
    t_transform,
)

__all__ = [
    # Legendre
    "legendre_grid",
    "legendre_at",
    "legendre_profile",
    # Polar and T
    "polar_transform",
    "polar_transform_detailed",
    "polar_at",
    "polar_profile",
    "t_transform",
    "require_geometric_convex",
    # Bodies
    "SupportBody2D",
    "BodyDocument",
    "polar_body",
    "equal_area_disc_polar_area",
    "santalo_set_check",
    "polar_complement_check",
    # Comparisons
    "TransformKind",
    "TransformSettings",
    "dual_axes",
    "apply_transform",
    "transform_comparison_check",
    "polar_level_identity_check",
    "polar_level_identity_nodes",
    "biconjugation_check",
    "order_reversal_check",
]
