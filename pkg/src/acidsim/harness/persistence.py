"""Snapshot and summary CSV files.

Numbers are written with 17 significant digits, which round-trips every
double exactly.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..model import State
from ..stepper import RunOutcome

__all__ = [
    "SNAPSHOT_HEADER",
    "SUMMARY_HEADER",
    "format_float",
    "snapshot_filename",
    "write_snapshot",
    "read_snapshot",
    "summary_row",
    "append_summary",
    "read_summary",
    "write_outcome",
]

SNAPSHOT_HEADER = ("x", "u", "w", "h")
SUMMARY_HEADER = ("scenario", "status", "blowup_time", "max_u", "max_w", "max_h")


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def snapshot_filename(time: float) -> str:
    return f"snapshot_t{float(time):g}.csv"


def write_snapshot(path, state: State) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SNAPSHOT_HEADER)
        for row in zip(state.grid.x, state.u, state.w, state.h):
            writer.writerow([format_float(v) for v in row])
    return path


def read_snapshot(path) -> dict[str, np.ndarray]:
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != SNAPSHOT_HEADER:
            raise ValueError(f"unexpected snapshot header {header!r}")
        rows = [[float(v) for v in row] for row in reader]
    cols = np.array(rows, dtype=float).reshape(-1, len(SNAPSHOT_HEADER)).T
    return dict(zip(SNAPSHOT_HEADER, cols))


def summary_row(name: str, outcome: RunOutcome) -> dict[str, str]:
    hi = outcome.diagnostics.field_max
    bt = outcome.blowup_time
    return {
        "scenario": name,
        "status": outcome.status,
        "blowup_time": "" if bt is None else format_float(bt),
        "max_u": format_float(hi["u"]),
        "max_w": format_float(hi["w"]),
        "max_h": format_float(hi["h"]),
    }


def append_summary(path, row: dict[str, str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fresh = not path.exists() or path.stat().st_size == 0
    with path.open("a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_HEADER)
        if fresh:
            writer.writeheader()
        writer.writerow(row)
    return path


def read_summary(path) -> list[dict[str, str]]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


def write_outcome(out_dir, name: str, outcome: RunOutcome) -> list[Path]:
    """Write one CSV per snapshot plus a summary row; returns the paths written."""
    out_dir = Path(out_dir)
    written = [
        write_snapshot(out_dir / snapshot_filename(s.requested_time), s.state)
        for s in outcome.snapshots
    ]
    written.append(append_summary(out_dir / "summary.csv", summary_row(name, outcome)))
    return written
