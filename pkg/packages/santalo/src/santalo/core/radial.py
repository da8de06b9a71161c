"""Radial functions on grids."""

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.core.grid import Axis, GridFunction, as_axes
from santalo.core.profile import RadialProfile


def make_radial(profile: RadialProfile, n: int, axes: Axis | tuple[Axis, ...]) -> GridFunction:
    """Sample f(x) = Ψ(‖x‖) on a box symmetric about the origin.

    Args:
        profile: Radial profile Ψ.
        n: Dimension; a single axis is repeated ``n`` times.
        axes: One axis or ``n`` axes.

    Raises:
        SantaloError: When the box is not symmetric about the origin.
    """
    resolved = as_axes(axes, n)
    if not all(axis.is_symmetric for axis in resolved):
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="radial functions are sampled on boxes symmetric about the origin",
            details={"axes": [(axis.lo, axis.hi) for axis in resolved]},
        )
    return GridFunction.from_callable(
        lambda *coords: profile(np.sqrt(sum(c * c for c in coords))),
        resolved,
    )
