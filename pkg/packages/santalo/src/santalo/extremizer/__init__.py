"""Normalization to unit radial mass and the search for the radial extremizer."""

from santalo.extremizer.search import (
    SearchConfig,
    SearchDocument,
    SearchResult,
    gaussian_distance,
    match_gaussian_mass,
    normalization_residual,
    normalize_profile,
    profile_from_parameters,
    search_extremizer,
    stationarity_gap,
)

__all__ = [
    "SearchConfig",
    "SearchDocument",
    "SearchResult",
    "normalize_profile",
    "normalization_residual",
    "gaussian_distance",
    "match_gaussian_mass",
    "profile_from_parameters",
    "search_extremizer",
    "stationarity_gap",
]
