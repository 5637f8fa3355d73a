"""Convolution matrices for the nonlocal growth limitation and their refresh policy.

The integral ``(J(., h) * f)(x_i)`` is approximated by the composite trapezoid
rule over the interior nodes, with ``M[i, j] = J(x_i - x_j, h_j)`` frozen between
refreshes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NegativeField
from .grid import Grid1D
from .kernels import KernelSpec

__all__ = [
    "ConvolutionCache",
    "build_matrix",
    "convolve",
    "refresh_if_due",
    "NEGATIVE_TOLERANCE",
]

NEGATIVE_TOLERANCE = 1e-12


def build_matrix(grid: Grid1D, k: KernelSpec, h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.shape != (grid.n_interior,):
        raise ValueError("h must hold one value per interior node")
    return k.spatial(grid.displacements()) * k.amplitude(h)[None, :]


def convolve(M: np.ndarray, f: np.ndarray, exponent: float, grid: Grid1D) -> np.ndarray:
    """Trapezoid-weighted ``sum_j M[i, j] * f[j]**exponent``.

    Values in ``[-1e-12, 0)`` are rounding noise and are treated as 0.
    """
    f = np.asarray(f, dtype=float)
    if exponent <= 0:
        raise ValueError("exponent must be positive")
    if np.any(f < -NEGATIVE_TOLERANCE):
        raise NegativeField(f"field has negative entries down to {f.min():.3e}")
    return M @ (grid.trapezoid_weights * np.maximum(f, 0.0) ** exponent)


@dataclass
class ConvolutionCache:
    """Both kernel matrices plus the bookkeeping of when they were built.

    ``last_refresh_step`` is ``None`` until the first build.
    """

    refresh_interval: int = 40
    mat1: np.ndarray | None = None
    mat2: np.ndarray | None = None
    last_refresh_step: int | None = None
    refreshes: int = 0
    h_clamps: int = field(default=0)

    def __post_init__(self):
        if self.refresh_interval < 1:
            raise ValueError("refresh_interval must be >= 1")

    def is_due(self, step: int) -> bool:
        if self.last_refresh_step is None or step == 0:
            return True
        if step < self.last_refresh_step:
            raise ValueError("step precedes the last refresh")
        return step - self.last_refresh_step >= self.refresh_interval


def refresh_if_due(
    c: ConvolutionCache,
    step: int,
    grid: Grid1D,
    k1: KernelSpec,
    k2: KernelSpec,
    h: np.ndarray,
) -> ConvolutionCache:
    """Return ``c`` untouched, or a rebuilt cache when ``step`` calls for it."""
    if not c.is_due(step):
        return c
    h = np.asarray(h, dtype=float)
    return ConvolutionCache(
        refresh_interval=c.refresh_interval,
        mat1=build_matrix(grid, k1, h),
        mat2=build_matrix(grid, k2, h),
        last_refresh_step=step,
        refreshes=c.refreshes + 1,
        h_clamps=c.h_clamps + int(np.count_nonzero(h < 0)),
    )
