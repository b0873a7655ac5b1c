"""Scalar minimization on log-spaced grids with golden-section refinement.

The selection routines in this package all follow the same recipe: evaluate
an objective on a log-spaced lambda grid, and when the grid argmin is
interior, refine inside the bracketing triple with golden-section search on
log(lambda).  Endpoint minima are returned as-is with a flag so monotone
objectives are visible to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1 / golden ratio


def log_grid(lo: float, hi: float, count: int) -> np.ndarray:
    """`count` log-spaced points on [lo, hi] with exact endpoints."""
    if not (lo > 0 and hi > lo):
        raise ValueError("`log_grid` requires 0 < lo < hi.")
    if count < 2:
        raise ValueError("`count` must be at least 2.")
    grid = np.logspace(np.log10(lo), np.log10(hi), count)
    grid[0] = lo
    grid[-1] = hi
    return grid


def golden_section_min(fun: Callable[[float], float], lo: float, hi: float,
                       rel_tol: float = 1e-8) -> tuple[float, float]:
    """Minimize `fun` on [lo, hi] to relative interval tolerance `rel_tol`.

    Returns (x, fun(x)) at the midpoint of the final bracket.  Assumes the
    minimum of a unimodal function is bracketed by [lo, hi].
    """
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > rel_tol * max(1.0, abs(a), abs(b)):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
    x = 0.5 * (a + b)
    return x, fun(x)


@dataclass(frozen=True)
class GridMinimum:
    """Result of a grid scan with optional golden-section refinement."""

    x: float
    value: float
    at_grid_edge: bool
    grid: np.ndarray
    grid_values: np.ndarray


def minimize_on_log_grid(fun: Callable[[float], float], grid: np.ndarray,
                         refine: bool = True, rel_tol: float = 1e-8) -> GridMinimum:
    """Scan `fun` over an ascending positive grid; refine interior minima.

    The refinement runs golden-section search on log(x) inside the triple
    bracketing the grid argmin.  Ties on the grid break toward the smaller
    x; the refined value never exceeds the best grid value (the grid point
    is kept if refinement cannot improve on it).  When the argmin sits on
    a grid endpoint (or the grid has one point) no refinement is attempted
    and ``at_grid_edge`` is set.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size < 1:
        raise ValueError("`grid` must contain at least one value.")
    if np.any(grid <= 0):
        raise ValueError("`grid` values must be positive.")
    if np.any(np.diff(grid) < 0):
        raise ValueError("`grid` must be sorted ascending.")
    values = np.array([fun(g) for g in grid], dtype=float)
    idx = int(np.argmin(values))  # first minimum: ties go to the smaller x
    if grid.size == 1 or idx == 0 or idx == grid.size - 1 or not refine:
        edge = grid.size == 1 or idx == 0 or idx == grid.size - 1
        return GridMinimum(float(grid[idx]), float(values[idx]), edge, grid, values)
    t, ft = golden_section_min(lambda u: fun(math.exp(u)),
                               math.log(grid[idx - 1]), math.log(grid[idx + 1]),
                               rel_tol=rel_tol)
    x, fx = math.exp(t), ft
    if fx > values[idx]:
        x, fx = float(grid[idx]), float(values[idx])
    return GridMinimum(x, fx, False, grid, values)
