"""Cost families φ(x, y) for infimum convolutions and enlargements."""

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.core.maps import MonotoneMap
from santalo.core.profile import QuadraticProfile, RadialProfile


class Cost(Protocol):
    """A cost is a pairwise matrix φ(x_i, y_j) on point clouds."""

    @property
    def label(self) -> str: ...

    @property
    def allows_negative_eps(self) -> bool: ...

    def pairwise(self, x: np.ndarray, y: np.ndarray) -> np.ndarray: ...


def _distances(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - y[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


@dataclass(frozen=True)
class HopfLaxCost:
    """φ(x, y) = t·G(‖x − y‖/t) for a convex profile G."""

    profile: RadialProfile
    t: float

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise SantaloError(
                code=ErrorCode.VALIDATION_ERROR,
                message="Hopf-Lax time must be positive",
                details={"t": self.t},
            )

    @property
    def label(self) -> str:
        kind = "quadratic" if isinstance(self.profile, QuadraticProfile) else "profile"
        return f"hopf_lax({kind},t={self.t:g})"

    @property
    def allows_negative_eps(self) -> bool:
        return False

    @property
    def is_quadratic(self) -> bool:
        return isinstance(self.profile, QuadraticProfile)

    def of_distance(self, d: np.ndarray) -> np.ndarray:
        return self.t * self.profile(np.asarray(d, dtype=float) / self.t)

    def pairwise(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.of_distance(_distances(x, y))


@dataclass(frozen=True)
class InnerProductCost:
    """φ(x, y) = −ρ(⟨x, y⟩) for an increasing ρ with ρ(0) = 0."""

    rho: MonotoneMap

    def __post_init__(self) -> None:
        if not self.rho.is_strictly_increasing:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="ρ must be increasing")
        if abs(float(self.rho(0.0))) > 1e-12:
            raise SantaloError(code=ErrorCode.VALIDATION_ERROR, message="ρ must vanish at zero")

    @property
    def label(self) -> str:
        return f"inner_product({self.rho.name})"

    @property
    def allows_negative_eps(self) -> bool:
        return True

    def pairwise(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return -self.rho(x @ y.T)


@dataclass(frozen=True)
class DistanceCost:
    """φ(x, y) = α(‖x − y‖) for a nondecreasing α."""

    alpha: MonotoneMap

    @classmethod
    def euclidean(cls) -> "DistanceCost":
        return cls(MonotoneMap.identity())

    @property
    def label(self) -> str:
        return f"distance({self.alpha.name})"

    @property
    def allows_negative_eps(self) -> bool:
        return False

    @property
    def is_euclidean(self) -> bool:
        return self.alpha.is_identity

    def pairwise(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.alpha(_distances(x, y))


AnyCost = HopfLaxCost | InnerProductCost | DistanceCost
