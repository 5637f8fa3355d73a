"""Named scenarios: one per blow-up threshold table cell or figure panel.

Every scenario uses the initial data of :func:`acidsim.model.paper_initial_data`
on ``[-5, 5]`` with ``dx = 0.05``, ``dt = 1e-4`` and ``T = 50``.  Threshold
scenarios carry an alpha range; the figure scenarios are single runs with
snapshots at ``t = 0, 10, 25, 50``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..errors import ConfigError, UnknownScenario
from ..grid import Grid1D, build_grid
from ..kernels import GAUSS_SHIFT, HOLLING3, LOGISTIC, UNIFORM, KernelSpec, kernel_from_name
from ..model import InitialData, ModelSpec, paper_coefficients, paper_initial_data
from ..stepper import SolverConfig
from . import config as cfgmod

__all__ = [
    "SweepRange",
    "Scenario",
    "SNAPSHOT_TIMES",
    "CATALOG",
    "get_scenario",
    "scenario_names",
    "scenario_items",
    "scenario_from_items",
]

SNAPSHOT_TIMES = (0.0, 10.0, 25.0, 50.0)


@dataclass(frozen=True)
class SweepRange:
    alpha_min: float
    alpha_max: float
    step: float = 0.1

    def __post_init__(self):
        if not self.step > 0:
            raise ConfigError("sweep step must be positive")
        if self.alpha_max < self.alpha_min:
            raise ConfigError("sweep alpha_max is below alpha_min")

    def grid(self) -> list[float]:
        """Alpha values on the sweep grid, rounded to kill accumulation error."""
        n = int(round((self.alpha_max - self.alpha_min) / self.step))
        return [round(self.alpha_min + k * self.step, 10) for k in range(n + 1)]


@dataclass(frozen=True)
class Scenario:
    name: str
    spec: ModelSpec
    init: InitialData = field(default_factory=paper_initial_data)
    cfg: SolverConfig = field(default_factory=lambda: SolverConfig(snapshot_times=SNAPSHOT_TIMES))
    sweep: SweepRange | None = None
    grid: Grid1D = field(default_factory=lambda: build_grid(-5.0, 5.0, 0.05))

    def with_alpha(self, alpha: float) -> "Scenario":
        return replace(self, spec=self.spec.with_(alpha=float(alpha)))


def _spec(alpha=2.0, beta=1.0, gamma=1.0, mu1=1.0, k1: KernelSpec = LOGISTIC, k2: KernelSpec = LOGISTIC, reduced=False):
    return paper_coefficients(alpha, beta, gamma, mu1, k1, k2, reduced)


def _build_catalog() -> dict[str, Scenario]:
    entries: list[Scenario] = []

    # alpha-threshold tables; alpha in the spec is the bottom of the sweep range
    kernel_rows = [
        ("logistic", "logistic", 2.0, 8.0),
        ("logistic", "uniform", 2.0, 10.0),
        ("uniform", "logistic", 2.0, 13.0),
        ("uniform", "uniform", 2.0, 16.0),
        ("gauss_shift", "holling3", 2.0, 6.0),
    ]
    for n1, n2, lo, hi in kernel_rows:
        entries.append(Scenario(
            f"table1/{n1}-{n2}",
            _spec(lo, k1=kernel_from_name(n1), k2=kernel_from_name(n2)),
            sweep=SweepRange(lo, hi),
        ))

    param_rows = [
        (10.0, 1.0, 1.0, 20.0, 30.0),
        (10.0, 10.0, 1.0, 15.0, 26.0),
        (10.0, 0.1, 1.0, 26.0, 37.0),
        (1.0, 10.0, 1.0, 2.0, 7.0),
        (1.0, 0.1, 1.0, 18.0, 29.0),
        (1.0, 1.0, 10.0, 2.0, 6.0),
    ]
    for beta, gamma, mu1, lo, hi in param_rows:
        entries.append(Scenario(
            f"table2/beta{beta:g}-gamma{gamma:g}-mu{mu1:g}",
            _spec(lo, beta, gamma, mu1),
            sweep=SweepRange(lo, hi),
        ))

    for col, a in enumerate((2.0, 5.0, 6.1, 6.2), start=1):
        entries.append(Scenario(f"fig2/col{col}", _spec(a)))
    for col, a in enumerate((2.0, 6.2, 14.6, 14.7), start=1):
        entries.append(Scenario(f"fig3/col{col}", _spec(a, k1=UNIFORM, k2=UNIFORM)))

    # reduced model; the blow-up panels also carry the threshold sweep
    fig4 = [(LOGISTIC, 4.4, None), (LOGISTIC, 4.5, (2.0, 7.0)), (UNIFORM, 5.7, None), (UNIFORM, 5.8, (2.0, 8.0))]
    for col, (k, a, rng) in enumerate(fig4, start=1):
        entries.append(Scenario(
            f"fig4/col{col}",
            _spec(a, k1=k, k2=k, reduced=True),
            sweep=None if rng is None else SweepRange(*rng),
        ))

    for col, a in enumerate((2.0, 4.0, 4.1), start=1):
        entries.append(Scenario(f"fig5/col{col}", _spec(a, k1=GAUSS_SHIFT, k2=HOLLING3)))
    entries.append(Scenario("fig5/col4", _spec(2.0, 200.0, 10.0, 100.0, GAUSS_SHIFT, HOLLING3)))

    fig6_rows = [(UNIFORM, False), (UNIFORM, True), (LOGISTIC, False), (LOGISTIC, True)]
    fig6_cols = [(1.0, 1000.0), (10.0, 1.0), (100.0, 1.0), (1000.0, 1.0)]
    for r, (k, reduced) in enumerate(fig6_rows, start=1):
        for c, (beta, gamma) in enumerate(fig6_cols, start=1):
            entries.append(Scenario(f"fig6/row{r}-col{c}", _spec(2.0, beta, gamma, 1.0, k, k, reduced)))

    return {s.name: s for s in entries}


CATALOG: dict[str, Scenario] = _build_catalog()


def scenario_names() -> list[str]:
    return list(CATALOG)


def get_scenario(name: str) -> Scenario:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownScenario(f"no scenario named {name!r}; see `sim list`") from None


def scenario_items(s: Scenario) -> dict[str, str]:
    """Flat config items reproducing ``s`` (initial data excluded)."""
    g, c = s.grid, s.cfg
    items = {
        "domain.x_min": repr(float(g.x_min)),
        "domain.x_max": repr(float(g.x_max)),
        "domain.dx": repr(float(g.dx)),
        "time.dt": repr(float(c.dt)),
        "time.T": repr(float(c.T_final)),
        "time.refresh_interval": str(int(c.refresh_interval)),
        "solver.blowup_threshold": repr(float(c.blowup_threshold)),
        "output.snapshot_times": ", ".join(repr(t) for t in c.snapshot_times),
    }
    items.update(cfgmod.spec_to_items(s.spec))
    if s.sweep is not None:
        items["sweep.alpha_min"] = repr(s.sweep.alpha_min)
        items["sweep.alpha_max"] = repr(s.sweep.alpha_max)
        items["sweep.step"] = repr(s.sweep.step)
    return items


def scenario_from_items(name: str, items: dict[str, str], init: InitialData | None = None) -> Scenario:
    sweep = None
    if "sweep.alpha_min" in items or "sweep.alpha_max" in items:
        sweep = SweepRange(
            cfgmod.get_float(items, "sweep.alpha_min"),
            cfgmod.get_float(items, "sweep.alpha_max"),
            cfgmod.get_float(items, "sweep.step", 0.1),
        )
    grid = cfgmod.grid_from_items(items)
    return Scenario(
        name=name,
        spec=cfgmod.spec_from_items(items),
        init=paper_initial_data() if init is None else init,
        cfg=cfgmod.solver_from_items(items),
        sweep=sweep,
        grid=grid,
    )
