"""Reference measures: Lebesgue on ℝⁿ and the standard Gaussian on ℝ."""

from dataclasses import dataclass
from enum import Enum
from math import gamma, pi

import numpy as np
from scipy.special import ndtr, ndtri

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.core.grid import Axis, GridFunction


def unit_ball_volume(n: int) -> float:
    """ω_n = π^{n/2}/Γ(n/2 + 1)."""
    if n < 1:
        raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="dimension must be positive", details={"n": n})
    return pi ** (n / 2) / gamma(n / 2 + 1)


class MeasureKind(str, Enum):
    LEBESGUE = "lebesgue"
    GAUSSIAN_1D = "gaussian1d"


@dataclass(frozen=True)
class MeasureSpec:
    """A reference measure together with its rearrangement geometry.

    Lebesgue sets rearrange to centered balls, Gaussian sets to half-lines
    ``{x < a}``. Grid cells are centered on nodes; Gaussian cells reach to
    ±∞ at the ends of the axis so the grid carries the full unit mass.
    """

    kind: MeasureKind
    n: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 3:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="dimension must be 1, 2 or 3")
        if self.kind is MeasureKind.GAUSSIAN_1D and self.n != 1:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="the Gaussian measure is one-dimensional")

    @classmethod
    def lebesgue(cls, n: int = 1) -> "MeasureSpec":
        return cls(MeasureKind.LEBESGUE, n)

    @classmethod
    def gaussian(cls) -> "MeasureSpec":
        return cls(MeasureKind.GAUSSIAN_1D, 1)

    @property
    def is_gaussian(self) -> bool:
        return self.kind is MeasureKind.GAUSSIAN_1D

    @property
    def label(self) -> str:
        return "gaussian" if self.is_gaussian else f"lebesgue{self.n}"

    def require_dimension(self, f: GridFunction) -> None:
        if f.ndim != self.n:
            raise SantaloError(
                code=ErrorCode.DIMENSION_MISMATCH,
                message="measure dimension does not match grid",
                details={"grid": f.ndim, "measure": self.n},
            )

    def axis_masses(self, axis: Axis) -> np.ndarray:
        """Masses of the node-centered cells along one axis."""
        if not self.is_gaussian:
            return np.full(axis.count, axis.step)
        nodes = axis.nodes
        edges = np.concatenate([[-np.inf], 0.5 * (nodes[1:] + nodes[:-1]), [np.inf]])
        return np.diff(ndtr(edges))

    def cell_masses(self, f: GridFunction) -> np.ndarray:
        """Per-node cell masses with the grid's shape."""
        self.require_dimension(f)
        masses = self.axis_masses(f.axes[0])
        for axis in f.axes[1:]:
            masses = np.multiply.outer(masses, self.axis_masses(axis))
        return np.asarray(masses, dtype=float)

    def max_cell_mass(self, f: GridFunction) -> float:
        return float(self.cell_masses(f).max())

    def mass_of_radius(self, radii: float | np.ndarray) -> np.ndarray:
        """Mass of the rearranged set with the given ball radius or half-line end.

        Lebesgue: ω_n|r|ⁿ. Gaussian: Φ(r). The input keeps its shape.
        """
        r = np.asarray(radii, dtype=float)
        if self.is_gaussian:
            return ndtr(r)
        return unit_ball_volume(self.n) * np.abs(r) ** self.n

    def mass_coordinate(self, points: np.ndarray) -> np.ndarray:
        """Mass of the rearranged set whose boundary passes through each point.

        ``points`` has the coordinates on its last axis (length n); a 1D input
        is read as scalar positions.
        """
        pts = np.asarray(points, dtype=float)
        if self.is_gaussian or pts.ndim <= 1:
            return self.mass_of_radius(pts)
        if pts.shape[-1] != self.n:
            raise SantaloError(
                code=ErrorCode.DIMENSION_MISMATCH,
                message="points must carry n coordinates on their last axis",
                details={"shape": list(pts.shape), "n": self.n},
            )
        return self.mass_of_radius(np.linalg.norm(pts, axis=-1))

    def radius_for_mass(self, mass: float | np.ndarray) -> np.ndarray:
        """Inverse of :meth:`mass_of_radius`: ball radius or half-line end for a mass."""
        m = np.asarray(mass, dtype=float)
        if self.is_gaussian:
            return ndtri(np.clip(m, 0.0, 1.0))
        return (np.maximum(m, 0.0) / unit_ball_volume(self.n)) ** (1.0 / self.n)

    def rearranged_axes(self, f: GridFunction) -> tuple[Axis, ...]:
        """Grid carrying rearrangements of ``f``: recentered for Lebesgue, unchanged for Gaussian."""
        if self.is_gaussian:
            return f.axes
        return tuple(axis.recentered() for axis in f.axes)
