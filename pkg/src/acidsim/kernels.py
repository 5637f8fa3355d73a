"""Interaction kernels ``J(x, h)``.

Every supported kernel factors as ``spatial(x) * amplitude(h)``; the convolution
matrices exploit this so that a refresh only rescales columns.

==============  ==========================================  ================
name            spatial(x)                                  amplitude(h)
==============  ==========================================  ================
``logistic``    ``1/(2 + e^x + e^-x)``                      1
``uniform``     ``1`` on ``|x| <= 1``, else 0               1
``gauss_shift`` ``exp(-x^2/2)/sqrt(2 pi)``                  ``h/(1+h) + 1/10``
``holling3``    1                                           ``h^2/(2(1+h^2))``
==============  ==========================================  ================
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedKind

__all__ = [
    "KernelSpec",
    "LOGISTIC",
    "UNIFORM",
    "GAUSS_SHIFT",
    "HOLLING3",
    "KERNEL_NAMES",
    "kernel_from_name",
    "tabulated_kernel",
    "eval_kernel",
    "kernel_lower_bound",
]

_SQRT_2PI = np.sqrt(2.0 * np.pi)
# nodes at distance exactly 1 must stay inside the closed support despite rounding
_SUPPORT_SLACK = 1e-12

KERNEL_NAMES = ("logistic", "uniform", "gauss_shift", "holling3")


@dataclass(frozen=True)
class KernelSpec:
    kind: str
    # only for kind == "tabulated": piecewise-linear spatial profile (zero outside)
    # and optional piecewise-linear amplitude in h (clamped beyond the table)
    x_nodes: tuple[float, ...] = ()
    x_values: tuple[float, ...] = ()
    h_nodes: tuple[float, ...] = ()
    h_values: tuple[float, ...] = ()
    lipschitz_h: float | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_NAMES and self.kind != "tabulated":
            raise UnsupportedKind(f"unknown kernel kind {self.kind!r}")
        if self.kind == "tabulated":
            if len(self.x_nodes) < 2 or len(self.x_nodes) != len(self.x_values):
                raise ValueError("tabulated kernel needs matching x_nodes/x_values")
            if len(self.h_nodes) != len(self.h_values):
                raise ValueError("h_nodes and h_values differ in length")
            if min(self.x_values, default=0.0) < 0 or min(self.h_values, default=0.0) < 0:
                raise ValueError("tabulated kernel values must be nonnegative")

    @property
    def h_dependent(self) -> bool:
        if self.kind == "tabulated":
            return len(self.h_nodes) > 0
        return self.kind in ("gauss_shift", "holling3")

    def spatial(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == "logistic":
            # |x| keeps the summation order, hence the value, exactly even
            a = np.abs(x)
            return 1.0 / (2.0 + np.exp(a) + np.exp(-a))
        if self.kind == "uniform":
            return (np.abs(x) <= 1.0 + _SUPPORT_SLACK).astype(float)
        if self.kind == "gauss_shift":
            return np.exp(-0.5 * x * x) / _SQRT_2PI
        if self.kind == "holling3":
            return np.ones_like(x)
        return np.interp(x, self.x_nodes, self.x_values, left=0.0, right=0.0)

    def amplitude(self, h) -> np.ndarray:
        h = np.maximum(np.asarray(h, dtype=float), 0.0)
        if self.kind == "gauss_shift":
            return h / (1.0 + h) + 0.1
        if self.kind == "holling3":
            h2 = h * h
            return h2 / (2.0 * (1.0 + h2))
        if self.kind == "tabulated" and self.h_nodes:
            return np.interp(h, self.h_nodes, self.h_values)
        return np.ones_like(h)

    def __call__(self, x, h=0.0):
        return eval_kernel(self, x, h)


LOGISTIC = KernelSpec("logistic")
UNIFORM = KernelSpec("uniform")
GAUSS_SHIFT = KernelSpec("gauss_shift")
HOLLING3 = KernelSpec("holling3")

_NAMED = {k.kind: k for k in (LOGISTIC, UNIFORM, GAUSS_SHIFT, HOLLING3)}


def kernel_from_name(name: str) -> KernelSpec:
    try:
        return _NAMED[name.strip().lower()]
    except KeyError:
        raise UnsupportedKind(
            f"unknown kernel {name!r}; expected one of {', '.join(KERNEL_NAMES)}"
        ) from None


def tabulated_kernel(x_nodes, x_values, h_nodes=(), h_values=(), lipschitz_h=None) -> KernelSpec:
    return KernelSpec(
        "tabulated",
        x_nodes=tuple(float(v) for v in x_nodes),
        x_values=tuple(float(v) for v in x_values),
        h_nodes=tuple(float(v) for v in h_nodes),
        h_values=tuple(float(v) for v in h_values),
        lipschitz_h=lipschitz_h,
    )


def eval_kernel(k: KernelSpec, x, h=0.0):
    """Evaluate ``J(x, h)``; negative ``h`` is treated as 0.

    Broadcasts over array arguments and returns a float for scalar input.
    """
    val = k.spatial(x) * k.amplitude(h)
    return float(val) if val.ndim == 0 else val


def kernel_lower_bound(k: KernelSpec, radius: float) -> float:
    """Infimum of ``k`` over ``|x| <= radius`` and ``0 <= h <= 1``.

    Each named kernel is even and nonincreasing in ``|x|`` and nondecreasing in
    ``h``, so the infimum sits at ``(x, h) = (radius, 0)``.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    if k.kind == "tabulated":
        raise UnsupportedKind("no analytic lower bound for tabulated kernels")
    return eval_kernel(k, radius, 0.0)
