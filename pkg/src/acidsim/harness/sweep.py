"""Locating the smallest Allee exponent at which a run blows up."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ..errors import ConfigError
from ..stepper import BLOWUP, COMPLETED, run
from .catalog import Scenario

__all__ = ["SweepEntry", "SweepResult", "run_alpha", "find_alpha_star"]


@dataclass(frozen=True)
class SweepEntry:
    alpha: float
    status: str
    blowup_time: float | None
    field_min: dict
    field_max: dict


@dataclass(frozen=True)
class SweepResult:
    scenario: str
    entries: tuple[SweepEntry, ...]

    @property
    def alpha_star(self) -> float | None:
        for e in self.entries:
            if e.status == BLOWUP:
                return e.alpha
        return None

    @property
    def no_blowup_in_range(self) -> bool:
        return self.alpha_star is None

    @property
    def statuses(self) -> list[tuple[float, str]]:
        return [(e.alpha, e.status) for e in self.entries]

    def entry(self, alpha: float) -> SweepEntry:
        for e in self.entries:
            if abs(e.alpha - alpha) < 1e-9:
                return e
        raise KeyError(alpha)

    def non_monotone(self) -> bool:
        """True when some run above the first blow-up completes."""
        star = self.alpha_star
        return star is not None and any(
            e.status == COMPLETED and e.alpha > star for e in self.entries
        )


def run_alpha(scenario: Scenario, alpha: float) -> SweepEntry:
    s = scenario.with_alpha(alpha)
    out = run(s.spec, s.init, s.cfg, s.grid)
    d = out.diagnostics
    return SweepEntry(alpha, out.status, out.blowup_time, dict(d.field_min), dict(d.field_max))


def _run_many(scenario: Scenario, alphas, pool) -> list[SweepEntry]:
    if pool is None:
        return [run_alpha(scenario, a) for a in alphas]
    return list(pool.map(run_alpha, [scenario] * len(alphas), alphas))


def _scan(scenario, alphas, pool, batch) -> tuple[list[SweepEntry], float | None]:
    """Run ``alphas`` in order, in batches, stopping after the first blow-up."""
    done: list[SweepEntry] = []
    for k in range(0, len(alphas), batch):
        chunk = _run_many(scenario, alphas[k:k + batch], pool)
        done.extend(chunk)
        hit = [e.alpha for e in chunk if e.status == BLOWUP]
        if hit:
            return done, hit[0]
    return done, None


def find_alpha_star(
    scenario: Scenario,
    *,
    mode: str = "coarse",
    workers: int = 1,
    alpha_min: float | None = None,
    alpha_max: float | None = None,
) -> SweepResult:
    """Sweep alpha over the scenario's 0.1-grid.

    ``mode="full"`` runs every grid point, keeping any mixed statuses above the
    first blow-up.  ``mode="coarse"`` scans every tenth grid point and then
    refines inside the first bracket that blows up; every reported status is an
    actual run on the 0.1-grid, and the run just below the reported threshold is
    always among them.  Coarse scanning can miss a blow-up window narrower than
    the stride.  ``alpha_min``/``alpha_max`` narrow the scenario's range.
    """
    if scenario.sweep is None:
        raise ConfigError(f"scenario {scenario.name!r} has no sweep range")
    if mode not in ("coarse", "full"):
        raise ConfigError(f"unknown sweep mode {mode!r}")
    grid = scenario.sweep.grid()
    lo = grid[0] if alpha_min is None else alpha_min
    hi = grid[-1] if alpha_max is None else alpha_max
    grid = [a for a in grid if lo - 1e-9 <= a <= hi + 1e-9]
    if not grid:
        raise ConfigError("empty alpha range")
    workers = max(1, int(workers))
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        if mode == "full":
            entries = _run_many(scenario, grid, pool)
        else:
            entries = _coarse_to_fine(scenario, grid, pool, workers)
    finally:
        if pool is not None:
            pool.shutdown()
    entries.sort(key=lambda e: e.alpha)
    return SweepResult(scenario.name, tuple(entries))


def _coarse_to_fine(scenario, grid, pool, workers) -> list[SweepEntry]:
    stride = 10
    coarse_idx = list(range(0, len(grid), stride))
    if coarse_idx[-1] != len(grid) - 1:
        coarse_idx.append(len(grid) - 1)
    coarse, hit = _scan(scenario, [grid[i] for i in coarse_idx], pool, workers)
    if hit is None:
        return coarse
    top = grid.index(hit)
    bottom = max(0, top - stride)
    inner = grid[bottom + 1:top]
    fine, _ = _scan(scenario, inner, pool, workers)
    return coarse + fine
