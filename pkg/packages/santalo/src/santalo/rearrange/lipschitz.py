"""Lipschitz estimates and the enlargement characterization of Lipschitz functions.

A function is L-Lipschitz iff for every level λ and radius ε the
ε-enlargement of ``{f < λ}`` stays inside ``{f < λ + Lε}``.
"""

from collections.abc import Sequence

import numpy as np
from scipy import ndimage

from santalo.commons.schema.base import BaseSchema
from santalo.commons.schema.errors import ErrorCode, SantaloError
from santalo.commons.telemetry.logging import get_logger
from santalo.core.grid import GridFunction
from santalo.core.measure import MeasureSpec
from santalo.rearrange.rearrangement import increasing_rearrangement

logger = get_logger(__name__)

PRESERVATION_CONSTANT = 2.0


def lipschitz_estimate(f: GridFunction, mask: np.ndarray | None = None) -> float:
    """Largest |Δf|/h between adjacent nodes along any axis.

    Args:
        f: Grid function, finite wherever it is examined.
        mask: Optional node mask; only pairs with both nodes inside count.

    Raises:
        SantaloError: ``precondition_failed`` when an examined node is +∞.
    """
    region = np.ones(f.shape, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
    if not np.isfinite(f.values[region]).all():
        raise SantaloError(
            code=ErrorCode.PRECONDITION_FAILED,
            message="lipschitz estimate needs a function finite on its box",
            details={"infinite_nodes": int((~np.isfinite(f.values) & region).sum())},
        )
    best = 0.0
    for axis_index, step in enumerate(f.steps):
        diffs = np.abs(np.diff(f.values, axis=axis_index)) / step
        both = region[_slice(f.ndim, axis_index, 1)] & region[_slice(f.ndim, axis_index, 0)]
        if both.any():
            best = max(best, float(diffs[both].max()))
    return best


def _slice(ndim: int, axis: int, head: int) -> tuple[slice, ...]:
    index = [slice(None)] * ndim
    index[axis] = slice(1, None) if head else slice(None, -1)
    return tuple(index)


class EnlargementViolation(BaseSchema):
    level: float
    eps: float
    cells: int
    excess: float


class EnlargementReport(BaseSchema):
    """Outcome of ``{f < λ}_ε ⊆ {f < λ + Lε}`` over a (λ, ε) grid."""

    lipschitz: float
    pairs: int
    holds: bool
    violations: list[EnlargementViolation]


def _distance_to(mask: np.ndarray, steps: Sequence[float]) -> np.ndarray:
    """Euclidean distance from every node to the nearest node of ``mask``."""
    if not mask.any():
        return np.full(mask.shape, np.inf)
    return np.asarray(ndimage.distance_transform_edt(~mask, sampling=steps), dtype=float)


def enlargement_lipschitz_check(
    f: GridFunction,
    lipschitz: float,
    eps_grid: Sequence[float],
    level_grid: Sequence[float],
    tolerance_cells: float = 1.0,
) -> EnlargementReport:
    """Check the enlargement inclusion on every (λ, ε) pair.

    A node of the strict enlargement counts as a violation only when it is
    farther than ``tolerance_cells`` grid steps from ``{f < λ + Lε}``.
    """
    if not f.finite_mask.all():
        raise SantaloError(code=ErrorCode.PRECONDITION_FAILED, message="enlargement check needs a finite function")
    steps = f.steps
    tolerance = tolerance_cells * max(steps) * (1.0 + 1e-9)
    violations: list[EnlargementViolation] = []
    for level in level_grid:
        distance = _distance_to(f.values < level, steps)
        for eps in eps_grid:
            enlarged = distance < eps
            target = f.values < level + lipschitz * eps
            outside = enlarged & ~target
            if not outside.any():
                continue
            gap = _distance_to(target, steps)[outside]
            bad = gap > tolerance
            if bad.any():
                violations.append(
                    EnlargementViolation(
                        level=float(level),
                        eps=float(eps),
                        cells=int(bad.sum()),
                        excess=float(gap[bad].max()),
                    )
                )
    pairs = len(level_grid) * len(eps_grid)
    logger.debug("enlargement_check lipschitz=%s pairs=%s violations=%s", lipschitz, pairs, len(violations))
    return EnlargementReport(lipschitz=lipschitz, pairs=pairs, holds=not violations, violations=violations)


def steepest_levels(f: GridFunction, offsets: Sequence[float] = (0.5,), rtol: float = 1e-9) -> list[float]:
    """Levels just above the lower end of the steepest adjacent pair nearest the box centre.

    Sublevel sets at these levels end where f rises at its Lipschitz rate, so
    an enlargement test with a smaller constant fails there. Among pairs within
    ``rtol`` of the steepest rate the one closest to the centre wins, which
    keeps the enlargement inside the box.
    """
    slopes = [np.abs(np.diff(f.values, axis=axis_index)) / h for axis_index, h in enumerate(f.steps)]
    best = max(float(s.max()) for s in slopes)
    candidates: list[tuple[float, int, tuple[int, ...]]] = []
    for axis_index, diffs in enumerate(slopes):
        hits = np.argwhere(diffs >= best * (1.0 - rtol))
        if hits.size == 0:
            continue
        centre = 0.5 * (np.asarray(f.shape, dtype=float) - 1.0)
        centre[axis_index] -= 0.5
        distance = np.linalg.norm(hits - centre, axis=1)
        k = int(np.argmin(distance))
        candidates.append((float(distance[k]), axis_index, tuple(int(i) for i in hits[k])))
    _, axis_index, index = min(candidates, key=lambda item: (item[0], item[1]))
    upper = list(index)
    upper[axis_index] += 1
    low = float(min(f.values[index], f.values[tuple(upper)]))
    return [low + offset * best * f.steps[axis_index] for offset in offsets]


class PreservationReport(BaseSchema):
    lipschitz_f: float
    lipschitz_rearranged: float
    bound: float
    window_nodes: int
    holds: bool


def lipschitz_preservation_check(
    f: GridFunction,
    constant: float = PRESERVATION_CONSTANT,
) -> PreservationReport:
    """Lip(f_*) ≤ Lip(f) + C·h on the window where f_* stays below f's boundary minimum.

    Above that level the sublevel sets of f are cut by the box, which is not a
    property of f.
    """
    measure = MeasureSpec.lebesgue(f.ndim)
    rearranged = increasing_rearrangement(f, measure)
    window = rearranged.values < f.boundary_min()
    lip_f = lipschitz_estimate(f)
    lip_star = lipschitz_estimate(rearranged, mask=window)
    bound = lip_f + constant * max(f.steps)
    return PreservationReport(
        lipschitz_f=lip_f,
        lipschitz_rearranged=lip_star,
        bound=bound,
        window_nodes=int(window.sum()),
        holds=lip_star <= bound,
    )
