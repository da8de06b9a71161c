"""Seeded instance generators for the property suites.

Every generator draws from ``numpy.random.default_rng(seed)`` only, so the
same seed reproduces the same instance bit for bit.
"""

from typing import Literal

import numpy as np
from pydantic import Field

from santalo.commons.schema.base import BaseSchema
from santalo.core.grid import Axis, GridFunction, as_axes
from santalo.core.profile import ConvexProfile

InstanceKind = Literal["profile", "grid1d", "gridNd"]

LIPSCHITZ_BOX = 6.0
LIPSCHITZ_KNOT_RANGE = 2.0


class RandomConvexSpec(BaseSchema):
    """Parameters of a random convex instance."""

    seed: int = Field(default=0, ge=0, lt=2**64)
    knots: int = Field(default=4, ge=1, le=256)
    slope_scale: float = Field(default=1.0, gt=0)
    translation: float = 0.0
    asymmetry: float = Field(default=0.0, ge=0.0, lt=1.0)
    n: int = Field(default=2, ge=1, le=3)
    half_width: float = Field(default=6.0, gt=0)
    nodes: int = Field(default=241, ge=2)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_profile(spec: RandomConvexSpec) -> ConvexProfile:
    """Convex profile with random knot gaps and exponential slope increments."""
    rng = rng_for(spec.seed)
    gaps = rng.uniform(0.2, 1.0, size=spec.knots)
    knots = np.concatenate([[0.0], np.cumsum(gaps)])
    slopes = np.cumsum(rng.exponential(spec.slope_scale, size=spec.knots))
    terminal = float(slopes[-1] + rng.exponential(spec.slope_scale))
    return ConvexProfile.from_slopes(knots, slopes, terminal)


def _supporting_lines(rng: np.random.Generator, spec: RandomConvexSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Random gradients and nonpositive offsets, always including ±e_i through zero."""
    base = np.concatenate([np.eye(n), -np.eye(n)]) * rng.uniform(0.5, 1.0, size=(2 * n, 1)) * spec.slope_scale
    extra = rng.normal(size=(spec.knots, n))
    extra *= (rng.exponential(spec.slope_scale, size=(spec.knots, 1)) + 0.5 * spec.slope_scale) / np.linalg.norm(
        extra, axis=1, keepdims=True
    )
    gradients = np.concatenate([base, extra])
    stretch = 1.0 + spec.asymmetry * np.linspace(-1.0, 1.0, n) if n > 1 else np.array([1.0 + spec.asymmetry])
    gradients *= stretch
    offsets = np.concatenate([np.zeros(2 * n), -rng.exponential(1.0, size=spec.knots)])
    return gradients, offsets


def random_grid(spec: RandomConvexSpec, ndim: int | None = None) -> GridFunction:
    """Maximum of random supporting lines, minimized exactly at the translation point."""
    n = ndim or spec.n
    rng = rng_for(spec.seed)
    gradients, offsets = _supporting_lines(rng, spec, n)
    axes = as_axes(Axis.symmetric(spec.half_width, spec.nodes), n)
    center = np.zeros(n)
    center[0] = spec.translation

    def evaluate(*coords: np.ndarray) -> np.ndarray:
        shifted = np.stack([c - center[i] for i, c in enumerate(coords)], axis=-1)
        return np.max(shifted @ gradients.T + offsets, axis=-1)

    return GridFunction.from_callable(evaluate, axes)


def random_convex(spec: RandomConvexSpec, kind: InstanceKind) -> ConvexProfile | GridFunction:
    """Random convex instance of the requested carrier kind."""
    if kind == "profile":
        return random_profile(spec)
    if kind == "grid1d":
        return random_grid(spec, ndim=1)
    return random_grid(spec)


def random_lipschitz_1d(seed: int, axis: Axis | None = None) -> tuple[GridFunction, float]:
    """Convex coercive piecewise-linear function with knots in [−2, 2].

    The outer slopes lie in [1, 3], so the exact Lipschitz constant is the
    larger of them.

    Returns:
        The sampled function and its exact Lipschitz constant.
    """
    rng = rng_for(seed)
    count = int(rng.integers(2, 6))
    knots = np.sort(rng.uniform(-LIPSCHITZ_KNOT_RANGE, LIPSCHITZ_KNOT_RANGE, size=count))
    left, right = rng.uniform(1.0, 3.0, size=2)
    slopes = np.sort(np.concatenate([[-left, right], rng.uniform(-left, right, size=count - 1)]))
    base = float(rng.uniform(0.0, 1.0))
    resolved = axis or Axis.symmetric(LIPSCHITZ_BOX, 481)
    x = resolved.nodes

    # value at the first knot, then integrate the slope sequence piece by piece
    values = np.full_like(x, base)
    values += np.where(x < knots[0], slopes[0] * (x - knots[0]), 0.0)
    for i in range(count):
        lo = knots[i]
        hi = knots[i + 1] if i + 1 < count else np.inf
        run = np.clip(x, lo, hi) - lo
        values += slopes[i + 1] * run
    return GridFunction((resolved,), values), float(max(left, right))


def random_even_convex(seed: int, axes: Axis | tuple[Axis, ...], n: int = 2) -> GridFunction:
    """Nonnegative even convex function vanishing at the origin.

    ``f(x) = ½⟨Ax, x⟩ + c·max_k(|⟨a_k, x⟩| − b_k)⁺`` with a random positive
    definite ``A`` whose eigenvalues lie in [0.5, 2].
    """
    rng = rng_for(seed)
    resolved = as_axes(axes, n)
    rotation, _ = np.linalg.qr(rng.normal(size=(n, n)))
    matrix = rotation @ np.diag(rng.uniform(0.5, 2.0, size=n)) @ rotation.T
    count = int(rng.integers(1, 4))
    directions = rng.normal(size=(count, n))
    thresholds = rng.uniform(0.2, 1.5, size=count)
    weight = float(rng.uniform(0.0, 1.0))

    def evaluate(*coords: np.ndarray) -> np.ndarray:
        points = np.stack(coords, axis=-1)
        quadratic = 0.5 * np.einsum("...i,ij,...j->...", points, matrix, points)
        kinks = np.max(np.maximum(np.abs(points @ directions.T) - thresholds, 0.0), axis=-1)
        return quadratic + weight * kinks

    return GridFunction.from_callable(evaluate, resolved)
