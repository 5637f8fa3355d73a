"""Single catalog runs with persisted artifacts."""
from __future__ import annotations

from pathlib import Path

from ..stepper import RunOutcome, run
from . import config as cfgmod
from .catalog import Scenario, get_scenario, scenario_from_items, scenario_items
from .persistence import write_outcome

__all__ = ["resolve_scenario", "run_scenario", "default_output_dir"]


def default_output_dir(name: str) -> Path:
    return Path("runs") / name.replace("/", "_")


def resolve_scenario(name: str, overrides=()) -> tuple[Scenario, dict[str, str]]:
    """Catalog scenario with ``key=value`` overrides applied, plus its flat items."""
    base = get_scenario(name)
    if not overrides:
        return base, scenario_items(base)
    items = cfgmod.apply_overrides(scenario_items(base), overrides)
    return scenario_from_items(name, items, init=base.init), items


def run_scenario(name: str, overrides=(), out_dir=None, write: bool = True) -> RunOutcome:
    """Run a catalog scenario and write its snapshot CSVs and summary row.

    The output directory is ``out_dir``, else ``output.dir`` from the
    overrides, else ``runs/<name>`` with slashes replaced by underscores.
    """
    scenario, items = resolve_scenario(name, overrides)
    outcome = run(scenario.spec, scenario.init, scenario.cfg, scenario.grid)
    if write:
        target = out_dir or items.get("output.dir") or default_output_dir(name)
        write_outcome(target, name, outcome)
    return outcome
