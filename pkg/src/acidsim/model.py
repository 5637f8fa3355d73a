"""Model description and semi-discrete right-hand sides.

The full system for active cells ``u``, quiescent cells ``w`` and protons ``h``::

    u_t = d/dx(psi(w,h) u_x) + mu1 u^alpha (1 - J1*u^beta - J2*w^gamma) + mu3t(h) F(w)
    w_t = mu2(h) (1 - w) u - mu3(h) F(w)
    h_t = D_H h_xx + g(u, w) - lambda h

The reduced variant drops ``w`` entirely (no ``J2`` term, no phenotype switch).

Coefficient functions may be arbitrary vectorized callables.  The preset
classes below are also callables, but additionally describe themselves to the
compiled stepping engine; a spec built only from presets runs on that engine.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import ConfigError
from .grid import Grid1D, div_psi_grad, laplacian_neumann
from .kernels import LOGISTIC, KernelSpec
from .nonlocal_terms import ConvolutionCache, convolve

__all__ = [
    "Rate",
    "ConstantDiffusivity",
    "Source",
    "ModelSpec",
    "InitialData",
    "State",
    "paper_coefficients",
    "paper_initial_data",
    "constant_initial_data",
    "saturating",
    "rhs_u",
    "rhs_w",
    "rhs_h",
]


@dataclass(frozen=True)
class Rate:
    """Preset one-variable rate: ``const`` (c), ``linear`` (c h) or ``saturating`` (c h/(1+h))."""

    kind: str = "const"
    scale: float = 1.0

    _KINDS = ("const", "linear", "saturating")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ConfigError(f"unknown rate kind {self.kind!r}")
        if self.scale < 0:
            raise ConfigError("rates must be nonnegative")

    def __call__(self, h):
        h = np.asarray(h, dtype=float)
        if self.kind == "const":
            return np.full_like(h, self.scale)
        if self.kind == "linear":
            return self.scale * h
        return self.scale * h / (1.0 + h)

    def sup_on_unit_interval(self) -> float:
        if self.kind == "saturating":
            return 0.5 * self.scale
        return self.scale


@dataclass(frozen=True)
class ConstantDiffusivity:
    value: float = 0.5

    def __post_init__(self):
        if not self.value > 0:
            raise ConfigError("diffusivity must be positive")

    def __call__(self, w, h):
        return np.full(np.shape(h), self.value, dtype=float)


@dataclass(frozen=True)
class Source:
    """Preset proton source ``g(u, w)``: ``saturating_sum`` or ``const``."""

    kind: str = "saturating_sum"
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("saturating_sum", "const"):
            raise ConfigError(f"unknown source kind {self.kind!r}")
        if self.scale < 0:
            raise ConfigError("source must be nonnegative")

    def __call__(self, u, w):
        u = np.asarray(u, dtype=float)
        if self.kind == "const":
            return np.full_like(u, self.scale)
        s = u + np.asarray(w, dtype=float)
        return self.scale * s / (1.0 + s)

    @property
    def sup(self) -> float:
        return self.scale


def saturating(w):
    w = np.asarray(w, dtype=float)
    return w / (1.0 + w)


def _identity(w):
    return np.asarray(w, dtype=float)


_F = {"identity": _identity, "saturating": saturating}


@dataclass(frozen=True)
class ModelSpec:
    alpha: float = 2.0
    beta: float = 1.0
    gamma: float = 1.0
    mu1: float = 1.0
    D_H: float = 0.1
    lam: float = 1.0
    psi: Callable = ConstantDiffusivity(0.5)
    mu2: Callable = Rate("linear")
    mu3: Callable = Rate("saturating")
    mu3_tilde: Callable = Rate("saturating")
    g: Callable = Source("saturating_sum")
    F_kind: str = "saturating"
    kernel1: KernelSpec = LOGISTIC
    kernel2: KernelSpec = LOGISTIC
    reduced: bool = False

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if not self.mu1 >= 0:
            raise ConfigError("mu1 must be nonnegative")
        if not (self.D_H > 0 and self.lam > 0):
            raise ConfigError("D_H and lambda must be positive")
        if self.F_kind not in _F:
            raise ConfigError(f"unknown F kind {self.F_kind!r}")

    def F(self, w):
        return _F[self.F_kind](w)

    def with_(self, **changes) -> "ModelSpec":
        return replace(self, **changes)

    @property
    def exponents_admissible(self) -> bool:
        """alpha, beta, gamma >= 1, as the analysis assumes (not enforced)."""
        return min(self.alpha, self.beta, self.gamma) >= 1

    @property
    def well_posedness_flag(self) -> bool:
        """Condition ``alpha < 1 + beta`` of the 1D global existence theory."""
        return self.alpha < 1 + self.beta

    @property
    def source_bound_ok(self) -> bool | None:
        """``G / lambda <= 1``; ``None`` when ``g`` is not a preset."""
        if isinstance(self.g, Source):
            return self.g.sup / self.lam <= 1
        return None

    @property
    def compiled_ok(self) -> bool:
        """Whether the compiled engine can run this spec."""
        return (
            isinstance(self.psi, ConstantDiffusivity)
            and all(isinstance(r, Rate) for r in (self.mu2, self.mu3, self.mu3_tilde))
            and isinstance(self.g, Source)
        )


def paper_coefficients(
    alpha: float = 2.0,
    beta: float = 1.0,
    gamma: float = 1.0,
    mu1: float = 1.0,
    kernel1: KernelSpec = LOGISTIC,
    kernel2: KernelSpec = LOGISTIC,
    reduced: bool = False,
) -> ModelSpec:
    """Coefficients of the 1D experiments.

    ``psi = 0.5``, ``mu2(h) = h``, ``mu3(h) = mu3t(h) = h/(1+h)``,
    ``g(u, w) = (u+w)/(1+u+w)``, ``D_H = 0.1``, ``lambda = 1``, ``F(w) = w/(1+w)``.
    """
    return ModelSpec(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        mu1=mu1,
        kernel1=kernel1,
        kernel2=kernel2,
        reduced=reduced,
    )


@dataclass(frozen=True)
class InitialData:
    """Initial profiles, each a vectorized callable of ``x`` or a nodal array."""

    u0: object
    w0: object
    h0: object

    def sample(self, grid: Grid1D) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        out = []
        for name in ("u0", "w0", "h0"):
            f = getattr(self, name)
            vals = np.asarray(f(grid.x) if callable(f) else f, dtype=float)
            if vals.ndim == 0:
                vals = np.full(grid.n_interior, float(vals))
            if vals.shape != (grid.n_interior,):
                raise ConfigError(
                    f"{name} has {vals.size} values but the grid has {grid.n_interior} nodes"
                )
            out.append(vals.copy())
        return tuple(out)

    def in_unit_box(self, grid: Grid1D) -> bool:
        return all(np.all((v >= 0) & (v <= 1)) for v in self.sample(grid))


def _u0(x):
    x = np.asarray(x, dtype=float)
    return np.where(x <= 0, 0.3 * np.exp(-0.2 * (x + 5.0) ** 2), 0.3 * np.exp(-5.0) * (1.0 - x / 5.0))


def _w0(x):
    x = np.asarray(x, dtype=float)
    return np.where(x <= 0, 0.7 * np.exp(-((x + 5.0) ** 2)), 0.7 * np.exp(-25.0) * (1.0 - x / 5.0))


def _h0(x):
    x = np.asarray(x, dtype=float)
    return np.where(x <= 0, 0.3 * np.exp(-5.0), 0.3 * np.exp(-5.0) * (1.0 - x / 5.0))


def paper_initial_data() -> InitialData:
    """Cells concentrated at the left end of ``[-5, 5]``, low uniform acidity."""
    return InitialData(_u0, _w0, _h0)


def constant_initial_data(u: float = 0.0, w: float = 0.0, h: float = 0.0) -> InitialData:
    return InitialData(u, w, h)


@dataclass(frozen=True)
class State:
    grid: Grid1D
    u: np.ndarray
    w: np.ndarray
    h: np.ndarray
    dt: float
    step: int = 0

    @property
    def t(self) -> float:
        return self.step * self.dt

    def fields(self) -> dict[str, np.ndarray]:
        return {"u": self.u, "w": self.w, "h": self.h}


def rhs_u(state: State, spec: ModelSpec, cache: ConvolutionCache) -> np.ndarray:
    grid = state.grid
    u, w, h = state.u, state.w, state.h
    if spec.reduced:
        w = np.zeros_like(u)
    u_pos = np.maximum(u, 0.0)
    limitation = 1.0 - convolve(cache.mat1, u, spec.beta, grid)
    out = div_psi_grad(u, spec.psi(w, h), grid)
    if spec.reduced:
        return out + spec.mu1 * u_pos**spec.alpha * limitation
    limitation -= convolve(cache.mat2, w, spec.gamma, grid)
    return out + spec.mu1 * u_pos**spec.alpha * limitation + spec.mu3_tilde(h) * spec.F(w)


def rhs_w(state: State, spec: ModelSpec) -> np.ndarray:
    if spec.reduced:
        return np.zeros_like(state.w)
    u, w, h = state.u, state.w, state.h
    return spec.mu2(h) * (1.0 - w) * u - spec.mu3(h) * spec.F(w)


def rhs_h(state: State, spec: ModelSpec) -> np.ndarray:
    w = np.zeros_like(state.u) if spec.reduced else state.w
    return spec.D_H * laplacian_neumann(state.h, state.grid) + spec.g(state.u, w) - spec.lam * state.h
