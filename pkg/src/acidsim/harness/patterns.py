"""Counting peaks in a sampled profile."""
from __future__ import annotations

import numpy as np

__all__ = ["count_interior_maxima"]


def _base(f: np.ndarray, i: int, direction: int) -> float:
    # walk downhill from the peak until the profile rises again or ends
    j = i
    while 0 <= j + direction < f.size and f[j + direction] <= f[j]:
        j += direction
    return float(f[j])


def count_interior_maxima(f, prominence: float) -> int:
    """Strict interior local maxima rising at least ``prominence`` above the
    local minimum on each side.

    The minimum on a side is where the profile, walked outward from the peak,
    first turns upward; a side that descends all the way to the boundary uses
    the boundary value.
    """
    if not prominence > 0:
        raise ValueError("prominence must be positive")
    f = np.asarray(f, dtype=float)
    if f.ndim != 1:
        raise ValueError("expected a one-dimensional profile")
    count = 0
    for i in range(1, f.size - 1):
        if f[i] > f[i - 1] and f[i] > f[i + 1]:
            left = _base(f, i, -1)
            right = _base(f, i, +1)
            if f[i] - left >= prominence and f[i] - right >= prominence:
                count += 1
    return count
