"""Explicit time stepping, blow-up detection and complete runs.

All three fields are advanced simultaneously by forward Euler from the state at
step ``n``.  The kernel matrices are refreshed from the current ``h`` every
``refresh_interval`` steps.

``run`` uses the compiled engine whenever every coefficient of the model is a
preset; ``step`` is the plain numpy reference, used for arbitrary callables and
as an independent check of the engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _engine
from .errors import ConfigError
from .grid import Grid1D
from .kernels import KernelSpec
from .model import InitialData, ModelSpec, Rate, State, rhs_h, rhs_u, rhs_w
from .nonlocal_terms import ConvolutionCache, refresh_if_due

__all__ = [
    "SolverConfig",
    "BlowupRecord",
    "Snapshot",
    "Diagnostics",
    "RunOutcome",
    "COMPLETED",
    "BLOWUP",
    "initial_state",
    "step",
    "detect_blowup",
    "run",
]

COMPLETED = "Completed"
BLOWUP = "BlowUp"
FIELDS = ("u", "w", "h")


@dataclass(frozen=True)
class SolverConfig:
    dt: float = 1e-4
    T_final: float = 50.0
    refresh_interval: int = 40
    blowup_threshold: float = 1e6
    snapshot_times: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError("dt must be positive")
        if not self.T_final > 0:
            raise ConfigError("T_final must be positive")
        if not self.blowup_threshold > 1:
            raise ConfigError("blowup_threshold must exceed 1")
        if int(self.refresh_interval) != self.refresh_interval or self.refresh_interval < 1:
            raise ConfigError("refresh_interval must be a positive integer")
        object.__setattr__(self, "snapshot_times", tuple(float(t) for t in self.snapshot_times))

    @property
    def n_steps(self) -> int:
        return _steps_at_or_after(self.T_final, self.dt)

    def snapshot_steps(self) -> list[tuple[float, int]]:
        """(requested time, step index) for each snapshot, clipped to the horizon."""
        out = []
        for t in self.snapshot_times:
            out.append((t, min(_steps_at_or_after(t, self.dt), self.n_steps)))
        return out


def _steps_at_or_after(t: float, dt: float) -> int:
    # the 1e-9 guard keeps 50/1e-4 from landing one step late through rounding
    return max(0, math.ceil(t / dt - 1e-9))


@dataclass(frozen=True)
class BlowupRecord:
    time: float
    step: int
    node: int
    x: float
    field: str
    value: float


@dataclass(frozen=True)
class Snapshot:
    requested_time: float
    state: State

    @property
    def time(self) -> float:
        return self.state.t


@dataclass
class Diagnostics:
    u_clamps: int = 0
    w_clamps: int = 0
    h_clamps: int = 0
    positivity_violations: int = 0
    refreshes: int = 0
    field_min: dict = field(default_factory=dict)
    field_max: dict = field(default_factory=dict)
    engine: str = ""


@dataclass
class RunOutcome:
    status: str
    final_state: State
    blowup: BlowupRecord | None
    snapshots: list[Snapshot]
    diagnostics: Diagnostics

    @property
    def completed(self) -> bool:
        return self.status == COMPLETED

    @property
    def blowup_time(self) -> float | None:
        return None if self.blowup is None else self.blowup.time

    def snapshot_at(self, requested_time: float) -> Snapshot:
        for snap in self.snapshots:
            if snap.requested_time == requested_time:
                return snap
        raise KeyError(requested_time)


def initial_state(init: InitialData, grid: Grid1D, dt: float, reduced: bool = False) -> State:
    u, w, h = init.sample(grid)
    if reduced:
        w = np.zeros_like(u)
    return State(grid, u, w, h, dt, 0)


def step(
    state: State, spec: ModelSpec, cfg: SolverConfig, cache: ConvolutionCache
) -> tuple[State, ConvolutionCache]:
    cache = refresh_if_due(cache, state.step, state.grid, spec.kernel1, spec.kernel2, state.h)
    du = rhs_u(state, spec, cache)
    dw = rhs_w(state, spec)
    dh = rhs_h(state, spec)
    dt = cfg.dt
    new = State(
        state.grid,
        state.u + dt * du,
        state.w + dt * dw,
        state.h + dt * dh,
        state.dt,
        state.step + 1,
    )
    return new, cache


def detect_blowup(state: State, cfg: SolverConfig) -> BlowupRecord | None:
    """First offending node: ``u`` is checked against the threshold, every
    field against non-finite values."""
    bad_u = ~np.isfinite(state.u) | (np.abs(np.nan_to_num(state.u, nan=np.inf)) > cfg.blowup_threshold)
    candidates = [("u", bad_u), ("w", ~np.isfinite(state.w)), ("h", ~np.isfinite(state.h))]
    for name, mask in candidates:
        if mask.any():
            i = int(np.argmax(mask))
            return BlowupRecord(
                time=state.t,
                step=state.step,
                node=i,
                x=float(state.grid.x[i]),
                field=name,
                value=float(getattr(state, name)[i]),
            )
    return None


def run(
    spec: ModelSpec,
    init: InitialData,
    cfg: SolverConfig,
    grid: Grid1D,
    engine: str = "auto",
) -> RunOutcome:
    """Integrate from ``t = 0`` to ``cfg.T_final`` or until blow-up.

    ``engine`` is ``"auto"``, ``"compiled"`` or ``"numpy"``.
    """
    state = initial_state(init, grid, cfg.dt, spec.reduced)
    if engine == "auto":
        engine = "compiled" if spec.compiled_ok else "numpy"
    if engine == "compiled":
        if not spec.compiled_ok:
            raise ConfigError("the compiled engine needs preset coefficients")
        return _run_compiled(state, spec, cfg)
    if engine == "numpy":
        return _run_numpy(state, spec, cfg)
    raise ConfigError(f"unknown engine {engine!r}")


def _snapshot_schedule(cfg: SolverConfig) -> dict[int, list[float]]:
    schedule: dict[int, list[float]] = {}
    for t_req, k in cfg.snapshot_steps():
        schedule.setdefault(k, []).append(t_req)
    return schedule


def _take(schedule, state: State, snapshots: list[Snapshot]):
    for t_req in schedule.get(state.step, ()):
        snapshots.append(Snapshot(t_req, _copy_state(state)))


def _copy_state(s: State) -> State:
    return State(s.grid, s.u.copy(), s.w.copy(), s.h.copy(), s.dt, s.step)


def _extrema(state: State, lo: dict, hi: dict):
    for name, arr in state.fields().items():
        lo[name] = min(lo.get(name, np.inf), float(arr.min()))
        hi[name] = max(hi.get(name, -np.inf), float(arr.max()))


def _run_numpy(state: State, spec: ModelSpec, cfg: SolverConfig) -> RunOutcome:
    diag = Diagnostics(engine="numpy")
    _extrema(state, diag.field_min, diag.field_max)
    schedule = _snapshot_schedule(cfg)
    snapshots: list[Snapshot] = []
    _take(schedule, state, snapshots)
    cache = ConvolutionCache(refresh_interval=cfg.refresh_interval)
    blowup = None
    for _ in range(cfg.n_steps):
        diag.u_clamps += int(np.count_nonzero(state.u < 0))
        diag.w_clamps += 0 if spec.reduced else int(np.count_nonzero(state.w < 0))
        new, cache = step(state, spec, cfg, cache)
        blowup = detect_blowup(new, cfg)
        if blowup is not None:
            break
        state = new
        _extrema(state, diag.field_min, diag.field_max)
        _take(schedule, state, snapshots)
    diag.h_clamps = cache.h_clamps
    diag.refreshes = cache.refreshes
    return RunOutcome(
        status=COMPLETED if blowup is None else BLOWUP,
        final_state=state,
        blowup=blowup,
        snapshots=snapshots,
        diagnostics=diag,
    )


_AMP_CODES = {"gauss_shift": _engine.AMP_GAUSS_SHIFT, "holling3": _engine.AMP_HOLLING3}
_RATE_CODES = {"const": _engine.RATE_CONST, "linear": _engine.RATE_LINEAR, "saturating": _engine.RATE_SATURATING}
_SRC_CODES = {"const": _engine.SRC_CONST, "saturating_sum": _engine.SRC_SATURATING_SUM}


def _kernel_arrays(k: KernelSpec, grid: Grid1D):
    spatial = np.ascontiguousarray(k.spatial(grid.displacements()))
    if k.kind == "tabulated":
        if k.h_nodes:
            return spatial, _engine.AMP_TABLE, np.array(k.h_nodes), np.array(k.h_values)
        return spatial, _engine.AMP_CONST, np.zeros(1), np.ones(1)
    return spatial, _AMP_CODES.get(k.kind, _engine.AMP_CONST), np.zeros(1), np.ones(1)


def _rate_row(r: Rate):
    return (float(_RATE_CODES[r.kind]), float(r.scale))


def _run_compiled(state: State, spec: ModelSpec, cfg: SolverConfig) -> RunOutcome:
    grid = state.grid
    n = grid.n_interior
    s1, amp1, th1, tv1 = _kernel_arrays(spec.kernel1, grid)
    s2, amp2, th2, tv2 = _kernel_arrays(spec.kernel2, grid)
    M = np.zeros((n, 2 * n))
    amp = np.array([amp1, amp2], dtype=np.int64)
    tables = (th1, tv1, th2, tv2)
    rates = np.array([_rate_row(spec.mu2), _rate_row(spec.mu3), _rate_row(spec.mu3_tilde)])
    counters = np.zeros(5, dtype=np.int64)
    fmin = np.array([state.u.min(), state.w.min(), state.h.min()])
    fmax = np.array([state.u.max(), state.w.max(), state.h.max()])
    u, w, h = state.u.copy(), state.w.copy(), state.h.copy()

    schedule = _snapshot_schedule(cfg)
    snapshots: list[Snapshot] = []
    _take(schedule, state, snapshots)
    stops = sorted(k for k in schedule if 0 < k < cfg.n_steps) + [cfg.n_steps]

    current, last_refresh = 0, -1
    blowup = None
    for stop in stops:
        if stop <= current:
            continue
        status, done, last_refresh, node, fld, value = _engine.advance(
            u, w, h, M, s1, s2, amp, tables, grid.trapezoid_weights, grid.dx, cfg.dt,
            current, stop - current, last_refresh, int(cfg.refresh_interval),
            float(spec.alpha), float(spec.beta), float(spec.gamma), float(spec.mu1),
            float(spec.psi.value), float(spec.D_H), float(spec.lam),
            rates, _SRC_CODES[spec.g.kind], float(spec.g.scale),
            spec.F_kind == "saturating", bool(spec.reduced), float(cfg.blowup_threshold),
            counters, fmin, fmax,
        )
        if status == _engine.STATUS_BLOWUP:
            accepted = current + done - 1
            blowup = BlowupRecord(
                time=(accepted + 1) * cfg.dt,
                step=accepted + 1,
                node=int(node),
                x=float(grid.x[node]),
                field=FIELDS[fld],
                value=float(value),
            )
            current = accepted
            break
        current = stop
        _take(schedule, State(grid, u, w, h, cfg.dt, current), snapshots)

    diag = Diagnostics(
        u_clamps=int(counters[0]),
        w_clamps=int(counters[1]),
        h_clamps=int(counters[2]),
        refreshes=int(counters[3]),
        positivity_violations=int(counters[4]),
        field_min=dict(zip(FIELDS, map(float, fmin))),
        field_max=dict(zip(FIELDS, map(float, fmax))),
        engine="compiled",
    )
    return RunOutcome(
        status=COMPLETED if blowup is None else BLOWUP,
        final_state=State(grid, u, w, h, cfg.dt, current),
        blowup=blowup,
        snapshots=snapshots,
        diagnostics=diag,
    )
