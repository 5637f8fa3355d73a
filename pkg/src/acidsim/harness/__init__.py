"""Scenario catalog, alpha sweeps, persistence and the ``sim`` command line."""
from .catalog import CATALOG, SNAPSHOT_TIMES, Scenario, SweepRange, get_scenario, scenario_names
from .patterns import count_interior_maxima
from .persistence import read_snapshot, read_summary, write_outcome, write_snapshot
from .runner import run_scenario
from .sweep import SweepEntry, SweepResult, find_alpha_star, run_alpha

__all__ = [
    "CATALOG",
    "SNAPSHOT_TIMES",
    "Scenario",
    "SweepRange",
    "get_scenario",
    "scenario_names",
    "count_interior_maxima",
    "read_snapshot",
    "read_summary",
    "write_outcome",
    "write_snapshot",
    "run_scenario",
    "SweepEntry",
    "SweepResult",
    "find_alpha_star",
    "run_alpha",
]
