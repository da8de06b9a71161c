"""Infimum convolution, Hopf-Lax evolution and their level-set comparisons."""

from santalo.infconv.checks import (
    DEFAULT_DENOMINATORS,
    ComparisonSettings,
    comparison_theorem_check,
    cost_transfer_check,
    decomposition_check,
    decomposition_union,
    hamilton_jacobi_residual,
    hopf_lax_comparison_check,
    hopf_lax_semigroup_check,
    require_supported_pair,
)
from santalo.infconv.costs import AnyCost, Cost, DistanceCost, HopfLaxCost, InnerProductCost
from santalo.infconv.engine import SetOnGrid, enlarge, hopf_lax, inf_convolution

__all__ = [
    # Costs
    "Cost",
    "AnyCost",
    "HopfLaxCost",
    "InnerProductCost",
    "DistanceCost",
    # Engine
    "inf_convolution",
    "hopf_lax",
    "enlarge",
    "SetOnGrid",
    # Checks
    "ComparisonSettings",
    "DEFAULT_DENOMINATORS",
    "decomposition_union",
    "decomposition_check",
    "require_supported_pair",
    "comparison_theorem_check",
    "hopf_lax_comparison_check",
    "hopf_lax_semigroup_check",
    "hamilton_jacobi_residual",
    "cost_transfer_check",
]
