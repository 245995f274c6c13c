"""
Fixed-Point Location.

Shared solver for the equations g(z) = 0 whose relevant solution is the
largest root in [lower, 1), z = 1 being the trivial root.

Method:
    1. Evaluate g on a uniform grid of [lower, 1) (vectorized)
    2. Take the highest grid zero or sign change
    3. Refine a sign change with Brent's method to ``xtol``
    4. Check regularity: g < 0 on (root - eps, root)

The trivial root 1 is returned when g is negative on the whole grid, except
possibly for a zero at ``lower`` itself. Any other root-free pattern is
reported as a NumericError.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import optimize

from src.utils.errors import NumericError

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 10_000
DEFAULT_XTOL = 1e-10
DEFAULT_REGULARITY_EPS = 1e-4
ZERO_ATOL = 1e-14

ArrayFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FixedPoint:
    """
    Result of a fixed-point search.

    Attributes:
        root: Largest root in [lower, 1), or 1.0 when only the trivial root exists
        trivial: True when root is the trivial root 1
        regularity_ok: g < 0 on a left neighbourhood of root
    """

    root: float
    trivial: bool
    regularity_ok: bool


def _scalar(func: ArrayFunction) -> Callable[[float], float]:
    return lambda z: float(np.asarray(func(np.array([z], dtype=float)))[0])


def _scan(func: ArrayFunction, lower: float, grid_points: int) -> Tuple[np.ndarray, np.ndarray]:
    grid = np.linspace(lower, 1.0, grid_points + 1)[:-1]
    values = np.asarray(func(grid), dtype=float)
    if not np.all(np.isfinite(values)):
        bad = grid[~np.isfinite(values)]
        raise NumericError("Non-finite values in fixed-point scan", {"first_bad_z": float(bad[0])})
    return grid, values


def largest_root(
    func: ArrayFunction,
    lower: float = 0.0,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
) -> Optional[float]:
    """
    Largest root of func in [lower, 1) found by the descending scan.

    Returns:
        The root, or None when the scan sees neither a zero nor a sign change
    """
    grid, values = _scan(func, lower, grid_points)
    return _root_from_scan(func, grid, values, xtol)


def _root_from_scan(func: ArrayFunction, grid: np.ndarray, values: np.ndarray, xtol: float) -> Optional[float]:
    signs = np.where(np.abs(values) <= ZERO_ATOL, 0.0, np.sign(values))
    zeros = np.flatnonzero(signs == 0)
    changes = np.flatnonzero(signs[:-1] * signs[1:] < 0)

    best_zero = grid[zeros[-1]] if zeros.size else None
    if changes.size:
        j = changes[-1]
        if best_zero is None or grid[j] > best_zero:
            root = optimize.brentq(_scalar(func), grid[j], grid[j + 1], xtol=xtol)
            logger.debug("Fixed point bracketed in [%.6g, %.6g] -> %.12g", grid[j], grid[j + 1], root)
            return float(root)
    if best_zero is not None:
        return float(best_zero)
    return None


def is_regular(func: ArrayFunction, root: float, eps: float = DEFAULT_REGULARITY_EPS) -> bool:
    """True when func < 0 on (root - eps, root); vacuous at root 0."""
    if root <= 0.0:
        return True
    left_points = root - eps * np.linspace(0.02, 0.98, 25)
    left_points = left_points[left_points >= 0.0]
    if left_points.size == 0:
        return True
    return bool(np.all(np.asarray(func(left_points)) < 0.0))


def solve_fixed_point(
    func: ArrayFunction,
    lower: float = 0.0,
    grid_points: int = DEFAULT_GRID_POINTS,
    xtol: float = DEFAULT_XTOL,
    eps: float = DEFAULT_REGULARITY_EPS,
) -> FixedPoint:
    """
    Locate the relevant fixed point of func.

    Args:
        func: Vectorized function of z
        lower: Left end of the search interval
        grid_points: Scan resolution
        xtol: Refinement tolerance
        eps: Regularity neighbourhood

    Returns:
        FixedPoint

    Raises:
        NumericError: No root in [lower, 1) although func is not negative there
    """
    grid, values = _scan(func, lower, grid_points)
    if np.all(values[1:] < -ZERO_ATOL) and values[0] <= ZERO_ATOL:
        return FixedPoint(root=1.0, trivial=True, regularity_ok=is_regular(func, 1.0, eps))

    root = _root_from_scan(func, grid, values, xtol)
    if root is not None:
        return FixedPoint(root=root, trivial=False, regularity_ok=is_regular(func, root, eps))
    raise NumericError(
        "No fixed point found and the trivial root is inconsistent",
        {"g_lower": float(values[0]), "g_max": float(values.max()), "lower": lower},
    )
