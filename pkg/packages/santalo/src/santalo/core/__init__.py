"""Function carriers, profiles, measures and instance generators."""

# Extended reals
from santalo.core.extended import (
    NEG_INF,
    POS_INF,
    as_extended,
    decode_extended,
    encode_extended,
    extended_add,
    extended_min,
    require_no_nan,
)

# Grids
from santalo.core.grid import Axis, GridFunction, as_axes, grid_points, mesh

# Maps and measures
from santalo.core.maps import MonotoneMap
from santalo.core.measure import MeasureKind, MeasureSpec, unit_ball_volume

# Profiles
from santalo.core.profile import (
    ConvexProfile,
    QuadraticProfile,
    RadialProfile,
    radial_mass,
    upper_envelope,
)

# Radial sampling
from santalo.core.radial import make_radial

# Generators
from santalo.core.random import (
    RandomConvexSpec,
    random_convex,
    random_even_convex,
    random_grid,
    random_lipschitz_1d,
    random_profile,
)

# Documents
from santalo.core.serialize import dumps, from_document, loads, to_document

__all__ = [
    # Extended reals
    "POS_INF",
    "NEG_INF",
    "as_extended",
    "require_no_nan",
    "extended_add",
    "extended_min",
    "encode_extended",
    "decode_extended",
    # Grids
    "Axis",
    "GridFunction",
    "as_axes",
    "mesh",
    "grid_points",
    "make_radial",
    # Maps and measures
    "MonotoneMap",
    "MeasureKind",
    "MeasureSpec",
    "unit_ball_volume",
    # Profiles
    "ConvexProfile",
    "QuadraticProfile",
    "RadialProfile",
    "radial_mass",
    "upper_envelope",
    # Generators
    "RandomConvexSpec",
    "random_convex",
    "random_profile",
    "random_grid",
    "random_lipschitz_1d",
    "random_even_convex",
    # Documents
    "to_document",
    "from_document",
    "dumps",
    "loads",
]
