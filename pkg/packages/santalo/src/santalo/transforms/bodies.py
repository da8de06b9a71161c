"""Symmetric convex bodies in the plane given by sampled support functions.

A body is the intersection of the half-planes ``⟨x, u_j⟩ ≤ h_j`` over ``M``
equally spaced directions. Its polar is the convex hull of the points
``u_j / h_j``, so both areas are exact polygon areas.
"""

from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from pydantic import Field
from scipy import ndimage
from scipy.spatial import ConvexHull

from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import Axis
from santalo.core.maps import MonotoneMap
from santalo.core.random import rng_for
from santalo.infconv.costs import InnerProductCost
from santalo.infconv.engine import SetOnGrid, enlarge
from santalo.reports import Report

logger = get_logger(__name__)

MIN_DIRECTIONS = 8
SYMMETRY_RTOL = 1e-9


class BodyDocument(BaseSchema):
    """Angle/support pairs of a body."""

    kind: str = "support_body_2d"
    angles: list[float] = Field(default_factory=list)
    support: list[float] = Field(default_factory=list)


def _angles(count: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(count) / count


@dataclass(frozen=True, eq=False)
class SupportBody2D:
    """Origin-symmetric convex body from support values on a uniform angle grid."""

    support: np.ndarray

    def __post_init__(self) -> None:
        h = np.asarray(self.support, dtype=float).ravel().copy()
        if h.size < MIN_DIRECTIONS or h.size % 2:
            raise SantaloError(
                code=ErrorCode.VALIDATION_ERROR,
                message="support function needs an even number of at least 8 directions",
                details={"directions": int(h.size)},
            )
        if not np.all(np.isfinite(h)) or np.any(h <= 0):
            raise SantaloError(
                code=ErrorCode.VALIDATION_ERROR,
                message="support values must be positive and finite",
                details={"min": float(np.nanmin(h))},
            )
        half = h.size // 2
        if not np.allclose(h[:half], h[half:], rtol=SYMMETRY_RTOL, atol=0.0):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="body must be origin-symmetric")
        h.setflags(write=False)
        object.__setattr__(self, "support", h)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], directions: int = 256) -> "SupportBody2D":
        """Sample ``fn(θ)`` on ``directions`` angles."""
        return cls(np.asarray(fn(_angles(directions)), dtype=float))

    @classmethod
    def disc(cls, radius: float = 1.0, directions: int = 256) -> "SupportBody2D":
        return cls(np.full(directions, float(radius)))

    @classmethod
    def ellipse(cls, a: float, b: float, directions: int = 256) -> "SupportBody2D":
        theta = _angles(directions)
        return cls(np.sqrt((a * np.cos(theta)) ** 2 + (b * np.sin(theta)) ** 2))

    @classmethod
    def square(cls, half_side: float = 1.0, directions: int = 256) -> "SupportBody2D":
        theta = _angles(directions)
        return cls(half_side * (np.abs(np.cos(theta)) + np.abs(np.sin(theta))))

    @classmethod
    def regular_polygon(cls, sides: int, circumradius: float = 1.0, directions: int = 256) -> "SupportBody2D":
        """Regular polygon with an even number of vertices at angles 2πi/sides."""
        if sides < 4 or sides % 2:
            raise SantaloError(
                code=ErrorCode.VALIDATION_ERROR,
                message="symmetric regular polygons need an even number of sides",
                details={"sides": sides},
            )
        theta = _angles(directions)
        vertex_angles = _angles(sides)
        return cls(circumradius * np.max(np.cos(theta[:, None] - vertex_angles[None, :]), axis=1))

    @classmethod
    def random(cls, seed: int, directions: int = 256) -> "SupportBody2D":
        """conv(±p_i) plus a small disc, with 1 to 5 random generators."""
        rng = rng_for(seed)
        generators = rng.normal(size=(int(rng.integers(1, 6)), 2)) * rng.uniform(0.5, 2.0)
        margin = float(rng.uniform(0.05, 0.5))
        theta = _angles(directions)
        u = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return cls(np.max(np.abs(u @ generators.T), axis=1) + margin)

    # -- geometry -------------------------------------------------------------

    @property
    def directions_count(self) -> int:
        return int(self.support.size)

    @property
    def angles(self) -> np.ndarray:
        return _angles(self.directions_count)

    @property
    def directions(self) -> np.ndarray:
        theta = self.angles
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)

    def scaled(self, factor: float) -> "SupportBody2D":
        if factor <= 0:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="scale must be positive")
        return SupportBody2D(self.support * factor)

    def polar(self) -> "SupportBody2D":
        """Support of K° on the same angles: max_j cos(θ_k − θ_j)/h_j."""
        theta = self.angles
        cosines = np.cos(theta[:, None] - theta[None, :])
        return SupportBody2D(np.max(cosines / self.support[None, :], axis=1))

    @cached_property
    def vertices(self) -> np.ndarray:
        """Counter-clockwise vertices of the half-plane intersection, one per edge of the polar hull.

        Support lines through a shared corner collapse onto one polar edge, so
        degenerate bodies such as polygons sampled at many angles stay exact.
        """
        equations = ConvexHull(self.directions / self.support[:, None]).equations
        # the edge ⟨n, p⟩ + c = 0 of the polar hull is the vertex −n/c
        corners = -equations[:, :2] / equations[:, 2:]
        return corners[ConvexHull(corners).vertices]

    @cached_property
    def polar_vertices(self) -> np.ndarray:
        points = self.directions / self.support[:, None]
        return points[ConvexHull(points).vertices]

    @property
    def area(self) -> float:
        return float(ConvexHull(self.vertices).volume)

    @property
    def polar_area(self) -> float:
        return float(ConvexHull(self.polar_vertices).volume)

    def support_at(self, points: np.ndarray) -> np.ndarray:
        """h_K(x) = max over vertices of ⟨x, v⟩."""
        return np.max(np.atleast_2d(points) @ self.vertices.T, axis=1)

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        pts = np.atleast_2d(points)
        return np.all(pts @ self.directions.T <= self.support[None, :] + tol, axis=1)

    def to_document(self) -> BodyDocument:
        return BodyDocument(angles=self.angles.tolist(), support=self.support.tolist())

    @classmethod
    def from_document(cls, document: BodyDocument) -> "SupportBody2D":
        expected = _angles(len(document.support))
        if len(document.angles) != expected.size or not np.allclose(document.angles, expected, atol=1e-12):
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="angles must be uniformly spaced from 0")
        return cls(np.asarray(document.support))


def polar_body(body: SupportBody2D) -> SupportBody2D:
    """K° = {x : h_K(x) ≤ 1} on the angle grid of K."""
    return body.polar()


def equal_area_disc_polar_area(body: SupportBody2D) -> float:
    """|(K*)°| for the disc K* with |K*| = |K|, which is π²/|K|."""
    return float(np.pi**2 / body.area)


def santalo_set_check(body: SupportBody2D, tol: float = 1e-3) -> Report:
    """|K||K°| ≤ π² and |K°| ≤ |(K*)°| for an origin-symmetric body."""
    area = body.area
    polar_area = body.polar_area
    rearranged_polar = equal_area_disc_polar_area(body)
    product = area * polar_area
    passed = product <= np.pi**2 + tol and polar_area <= rearranged_polar + tol
    logger.debug("santalo_set product=%s polar_area=%s bound=%s", product, polar_area, rearranged_polar)
    return Report(
        check="santalo_set",
        passed=bool(passed),
        details={
            "area": area,
            "polar_area": polar_area,
            "rearranged_polar_area": rearranged_polar,
            "volume_product": product,
            "bound": float(np.pi**2),
            "deficit": float(np.pi**2 - product),
        },
    )


def polar_complement_check(
    body: SupportBody2D,
    rho: MonotoneMap,
    eps: float,
    *,
    nodes: int = 41,
    refine: int = 4,
    layer: int = 1,
) -> Report:
    """The complement of K_{φ,−ε} for φ = −ρ(⟨x, y⟩) is ρ⁻¹(ε)·K°, up to a boundary layer.

    K is rasterized on a grid ``refine`` times finer than the output grid.
    Cells where the two sets disagree must lie within ``layer`` cells of the
    boundary of ρ⁻¹(ε)·K°.

    Raises:
        SantaloError: ``validation_error`` for ε ≤ 0.
    """
    if eps <= 0:
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="ε must be positive", details={"eps": eps})
    scale = rho.generalized_inverse(eps)
    reach = float(np.linalg.norm(body.vertices, axis=1).max())
    inner = Axis.symmetric(1.05 * reach, (nodes - 1) * refine + 1)
    polar_reach = float(np.linalg.norm(body.polar_vertices, axis=1).max())
    outer = Axis.symmetric(1.25 * scale * polar_reach, nodes)

    raster = SetOnGrid.from_predicate(
        inner,
        lambda x, y: body.contains(np.stack([x.ravel(), y.ravel()], axis=1)).reshape(x.shape),
        ndim=2,
    )
    complement = enlarge(raster, InnerProductCost(rho), -eps, out_axes=(outer, outer)).complement()
    expected = SetOnGrid.from_predicate(
        outer,
        lambda x, y: (body.support_at(np.stack([x.ravel(), y.ravel()], axis=1)) <= scale).reshape(x.shape),
        ndim=2,
    )
    structure = np.ones((3, 3), dtype=bool)
    band = ndimage.binary_dilation(expected.mask, structure, iterations=layer) & ~ndimage.binary_erosion(
        expected.mask, structure, iterations=layer
    )
    mismatch = complement.mask ^ expected.mask
    outside_band = int(np.count_nonzero(mismatch & ~band))
    return Report(
        check="polar_complement",
        passed=outside_band == 0,
        details={
            "eps": eps,
            "scale": scale,
            "mismatched_cells": int(np.count_nonzero(mismatch)),
            "mismatched_outside_layer": outside_band,
            "expected_cells": expected.cell_count,
        },
    )
