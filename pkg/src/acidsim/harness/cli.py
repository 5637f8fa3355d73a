"""``sim`` command line: run, sweep, bounds and list.

Exit codes: 0 on a completed run or a finished sweep, 2 when a single run
blows up, 1 on any error.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from ..bounds import (
    BoundParams,
    DomainGeometry,
    apriori_sup_bound,
    growth_constant_C3,
    poincare_constant,
    sobolev_constant,
)
from ..errors import AcidsimError, ExponentDomainError
from ..kernels import kernel_lower_bound
from ..stepper import BLOWUP
from . import config as cfgmod
from .catalog import CATALOG
from .persistence import format_float
from .runner import resolve_scenario, run_scenario
from .sweep import find_alpha_star

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_ERROR, EXIT_BLOWUP = 0, 1, 2


def _fmt(v) -> str:
    return "" if v is None else format_float(v)


def _cmd_list(args, out) -> int:
    for name, s in CATALOG.items():
        sp = s.spec
        desc = (
            f"alpha={sp.alpha:g} beta={sp.beta:g} gamma={sp.gamma:g} mu1={sp.mu1:g} "
            f"J1={sp.kernel1.kind} J2={sp.kernel2.kind}"
        )
        if sp.reduced:
            desc += " reduced"
        if s.sweep is not None:
            desc += f" sweep=[{s.sweep.alpha_min:g},{s.sweep.alpha_max:g}]"
        print(f"{name}\t{desc}", file=out)
    return EXIT_OK


def _cmd_run(args, out) -> int:
    overrides = list(args.set or [])
    outcome = run_scenario(args.scenario, overrides, out_dir=args.out, write=not args.no_write)
    hi = outcome.diagnostics.field_max
    print(f"scenario\t{args.scenario}", file=out)
    print(f"status\t{outcome.status}", file=out)
    print(f"blowup_time\t{_fmt(outcome.blowup_time)}", file=out)
    for name in ("u", "w", "h"):
        print(f"max_{name}\t{_fmt(hi[name])}", file=out)
    return EXIT_BLOWUP if outcome.status == BLOWUP else EXIT_OK


def _cmd_sweep(args, out) -> int:
    scenario, _ = resolve_scenario(args.scenario, list(args.set or []))
    result = find_alpha_star(
        scenario,
        mode=args.mode,
        workers=args.workers,
        alpha_min=args.alpha_min,
        alpha_max=args.alpha_max,
    )
    print("alpha\tstatus\tblowup_time", file=out)
    for e in result.entries:
        print(f"{e.alpha:.10g}\t{e.status}\t{_fmt(e.blowup_time)}", file=out)
    star = result.alpha_star
    print(f"alpha_star\t{'none (no blow-up in range)' if star is None else f'{star:.10g}'}", file=out)
    if args.out:
        path = Path(args.out) / "sweep.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("alpha", "status", "blowup_time"))
            for e in result.entries:
                writer.writerow((f"{e.alpha:.10g}", e.status, _fmt(e.blowup_time)))
    return EXIT_OK


def bounds_table(items: dict[str, str]) -> list[tuple[str, str]]:
    """Rows ``(quantity, value)`` of analytic constants for a config."""
    spec = cfgmod.spec_from_items(items)
    a, b = cfgmod.get_float(items, "domain.x_min", -5.0), cfgmod.get_float(items, "domain.x_max", 5.0)
    geom = DomainGeometry.interval(a, b)
    s = cfgmod.get_float(items, "bounds.s", math.inf)
    eta_default = min(kernel_lower_bound(k, geom.diameter) for k in (spec.kernel1, spec.kernel2))
    params = BoundParams(
        alpha=spec.alpha,
        beta=spec.beta,
        mu1=spec.mu1,
        mu3_tilde_sup=cfgmod.get_float(items, "bounds.mu3_tilde_sup", spec.mu3_tilde.sup_on_unit_interval()),
        delta=cfgmod.get_float(items, "bounds.delta", spec.psi.value),
        eta=cfgmod.get_float(items, "bounds.eta", eta_default),
        s=s,
        K=cfgmod.get_float(items, "bounds.K", 1.5),
    )
    q = cfgmod.get_float(items, "bounds.q", max(2.0, spec.alpha + spec.beta - 1))
    K1 = cfgmod.get_float(items, "bounds.K1", 1.0)
    K2 = cfgmod.get_float(items, "bounds.K2", 1.0)
    cp = cfgmod.get_float(items, "bounds.poincare", poincare_constant(geom))
    rows = [
        ("C_S", format_float(sobolev_constant(geom, s))),
        ("C_P", format_float(cp)),
        ("eta", format_float(params.eta)),
        ("C1", format_float(params.C1)),
        ("q", format_float(q)),
    ]
    for label, fn in (
        ("C3(q)", lambda: growth_constant_C3(q, K1, K2, params, geom, poincare=cp)),
        ("sup_bound", lambda: apriori_sup_bound(params, geom)),
    ):
        try:
            rows.append((label, format_float(fn())))
        except ExponentDomainError as exc:
            rows.append((label, f"n/a ({exc})"))
    return rows


def _cmd_bounds(args, out) -> int:
    items = cfgmod.apply_overrides(cfgmod.load_config(args.config), list(args.set or []))
    for label, value in bounds_table(items):
        print(f"{label}\t{value}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one catalog scenario and write CSV snapshots")
    p.add_argument("--scenario", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    p.add_argument("--out", help="output directory (default runs/<scenario>)")
    p.add_argument("--no-write", action="store_true", help="skip writing artifacts")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="locate the smallest blow-up alpha of a scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.add_argument("--mode", choices=("coarse", "full"), default="coarse")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--out", help="directory for sweep.csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("bounds", help="print analytic constants for a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("list", help="list catalog scenarios")
    p.set_defaults(func=_cmd_list)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args, out)
    except (AcidsimError, OSError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"sim: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
