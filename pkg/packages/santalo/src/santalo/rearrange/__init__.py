"""Level-set masses, rearrangements and Lipschitz estimates."""

from santalo.rearrange.checks import (
    equimeasurability_check,
    gaussian_isoperimetry_check,
    gaussian_mass,
    layer_cake_check,
    rearrangement_level_check,
)
from santalo.rearrange.levels import (
    LevelSetMass,
    level_masses,
    quantile_levels,
    straddle_mask,
    sublevel_mass,
    superlevel_mass,
)
from santalo.rearrange.lipschitz import (
    EnlargementReport,
    PreservationReport,
    enlargement_lipschitz_check,
    lipschitz_estimate,
    lipschitz_preservation_check,
    steepest_levels,
)
from santalo.rearrange.rearrangement import decreasing_rearrangement, increasing_rearrangement

__all__ = [
    # Level sets
    "LevelSetMass",
    "superlevel_mass",
    "sublevel_mass",
    "level_masses",
    "quantile_levels",
    "straddle_mask",
    # Rearrangements
    "decreasing_rearrangement",
    "increasing_rearrangement",
    # Lipschitz
    "lipschitz_estimate",
    "enlargement_lipschitz_check",
    "lipschitz_preservation_check",
    "steepest_levels",
    "EnlargementReport",
    "PreservationReport",
    # Checks
    "equimeasurability_check",
    "rearrangement_level_check",
    "layer_cake_check",
    "gaussian_isoperimetry_check",
    "gaussian_mass",
]
