"""
Santalo - rearrangements, infimum convolutions and the Blaschke-Santalo flow

This package provides:
- santalo.commons: Core utilities, config, schemas, telemetry
- santalo.core: Grid functions, radial profiles, measures and random instances
- santalo.rearrange: Rearrangements, level-set masses and Lipschitz checks
- santalo.infconv: Infimum convolutions, Hopf-Lax evolution and comparison checks
- santalo.transforms: Legendre, polar and T-transforms and planar convex bodies
- santalo.flow: The Bessel semigroup and the monotone Blaschke-Santalo flow
- santalo.extremizer: Search for the radial extremizer of the product functional
- santalo.cli: The ``santalo`` command line
"""

__version__ = "0.1.0"

from santalo import commons, core, extremizer, flow, infconv, rearrange, transforms

__all__ = ["__version__", "commons", "core", "rearrange", "infconv", "transforms", "flow", "extremizer"]
