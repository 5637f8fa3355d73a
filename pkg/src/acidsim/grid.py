"""Equidistant 1D mesh with one ghost node per side and the discrete operators.

Fields are plain float arrays holding one value per interior node.  The
no-flux boundary is realized by copying the adjacent interior value into the
ghost node, which is first-order accurate but matches the reported scheme.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NonDivisibleSpacing, NonpositiveDiffusivity

__all__ = [
    "Grid1D",
    "build_grid",
    "ghost_extend",
    "laplacian_neumann",
    "div_psi_grad",
]


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_interior: int

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.n_interior < 3:
            raise ValueError("a grid needs at least 3 interior nodes")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_interior - 1)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @cached_property
    def x(self) -> np.ndarray:
        """Node coordinates ``x_min + i*dx``."""
        x = self.x_min + np.arange(self.n_interior) * self.dx
        x.setflags(write=False)
        return x

    @cached_property
    def trapezoid_weights(self) -> np.ndarray:
        """Composite trapezoid weights: ``dx`` inside, ``dx/2`` at both ends."""
        wt = np.full(self.n_interior, self.dx)
        wt[0] = wt[-1] = 0.5 * self.dx
        wt.setflags(write=False)
        return wt

    def displacements(self) -> np.ndarray:
        """Matrix of ``x_i - x_j`` computed as ``(i - j)*dx`` (exactly antisymmetric)."""
        idx = np.arange(self.n_interior)
        return (idx[:, None] - idx[None, :]) * self.dx


def build_grid(x_min: float, x_max: float, dx: float) -> Grid1D:
    if not x_max > x_min:
        raise ValueError("x_max must exceed x_min")
    if not dx > 0:
        raise ValueError("dx must be positive")
    ratio = (x_max - x_min) / dx
    cells = round(ratio)
    if cells < 1 or abs(ratio - cells) > 1e-12 * ratio:
        raise NonDivisibleSpacing(f"dx={dx!r} does not tile [{x_min!r}, {x_max!r}]")
    return Grid1D(float(x_min), float(x_max), int(cells) + 1)


def ghost_extend(f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    return np.concatenate((f[:1], f, f[-1:]))


def laplacian_neumann(f: np.ndarray, grid: Grid1D) -> np.ndarray:
    ext = ghost_extend(f)
    return (ext[:-2] - 2.0 * ext[1:-1] + ext[2:]) / grid.dx**2


def div_psi_grad(u: np.ndarray, psi_nodes: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Conservative discretization of ``d/dx(psi du/dx)``.

    Face diffusivities are arithmetic means of the nodal values; ghost values of
    both ``u`` and ``psi`` are mirrored, so the boundary fluxes vanish.
    """
    ext_psi = ghost_extend(psi_nodes)
    if np.any(ext_psi <= 0):
        raise NonpositiveDiffusivity("diffusivity must be strictly positive")
    if np.all(ext_psi == ext_psi[0]):
        # constant psi: factor out so the result is exactly psi * Laplacian
        return ext_psi[0] * laplacian_neumann(u, grid)
    ext_u = ghost_extend(u)
    face = 0.5 * (ext_psi[:-1] + ext_psi[1:])
    flux = face * (ext_u[1:] - ext_u[:-1])
    return (flux[1:] - flux[:-1]) / grid.dx**2
