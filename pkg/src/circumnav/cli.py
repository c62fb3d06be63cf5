"""Command-line entry point: ``circumnav design|simulate|sweep|verify``.

Exit codes: 0 ok, 2 invalid radii, 3 delta above its bound, 4 an audited
invariant failed, 5 barrier breach during simulation, 6 unreadable or
malformed input, 7 initial condition rejected.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from circumnav.analysis import audit
from circumnav.diffdrive import max_feasible_omega
from circumnav.errors import BarrierBreachError, DeltaBoundError, GeometryError, InitialConditionError
from circumnav.outputs import (
    TrajectoryFormatError,
    dump_json,
    quantized,
    read_trajectory_csv,
    write_trajectory_csv,
)
from circumnav.params import design_report
from circumnav.runconfig import ConfigError, RunConfig, load_config
from circumnav.sim import initial_barrier, simulate

EXIT_OK = 0
EXIT_GEOMETRY = 2
EXIT_DELTA = 3
EXIT_INVARIANT = 4
EXIT_BARRIER = 5
EXIT_IO = 6
EXIT_INITIAL = 7

SWEEP_PARAMS = ("kappa", "theta0_deg")
SWEEP_COLUMNS = ("entry_count", "min_range", "convergence_time", "error")


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fail(code, message):
    raise _Exit(code, message)


def _load(path) -> RunConfig:
    try:
        return load_config(path)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read config: {exc}")
    except (ConfigError, ValueError) as exc:
        _fail(EXIT_IO, f"invalid config: {exc}")


def _params(cfg: RunConfig):
    try:
        return cfg.design_params()
    except GeometryError as exc:
        _fail(EXIT_GEOMETRY, f"radii rejected ({exc.condition}): {exc}")
    except DeltaBoundError as exc:
        _fail(EXIT_DELTA, f"delta rejected: {exc}")
    except ValueError as exc:
        _fail(EXIT_IO, f"invalid config: {exc}")


def _sim_config(cfg, params):
    try:
        return cfg.sim_config(params)
    except ValueError as exc:
        _fail(EXIT_IO, f"invalid config: {exc}")


def _drive_check(cfg, omega_bound):
    try:
        limit = max_feasible_omega(cfg.V, cfg.drive)
    except ValueError:
        limit = 0.0
    return {
        "d_w": cfg.drive.d_w,
        "v_wheel_max": cfg.drive.v_wheel_max,
        "max_feasible_omega": limit,
        "omega_bound_feasible": None if omega_bound is None else omega_bound <= limit,
    }


def cmd_design(args) -> int:
    cfg = _load(args.config)
    params = _params(cfg)
    eta0, W0 = initial_barrier(_sim_config(cfg, params))
    report = design_report(params, W0, eta0)
    out = {"design": report.to_dict(), "drive": _drive_check(cfg, report.omega_bound)}
    dump_json(out, sys.stdout)
    return EXIT_OK


def _run(cfg, params):
    sim_cfg = _sim_config(cfg, params)
    try:
        return simulate(sim_cfg)
    except InitialConditionError as exc:
        _fail(EXIT_INITIAL, f"initial condition rejected: {exc}")
    except BarrierBreachError as exc:
        _fail(EXIT_BARRIER, f"barrier breach: {exc}")


def cmd_simulate(args) -> int:
    cfg = _load(args.config)
    params = _params(cfg)
    traj, summary = _run(cfg, params)
    stored = quantized(traj)
    report = audit(stored, params, summary.W0, cfg.controller_mode)
    design = design_report(params, summary.W0, summary.eta0)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "trajectory.csv", "w", newline="") as fh:
        write_trajectory_csv(traj, fh)
    with open(out / "summary.json", "w") as fh:
        dump_json(
            {
                "config": cfg.to_dict(),
                "design": design.to_dict(),
                "drive": _drive_check(cfg, design.omega_bound),
                "summary": summary.to_dict(),
                "invariants": report.to_dict(),
            },
            fh,
        )
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        print(f"invariant check(s) failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def _sweep_row(cfg_dict, param, value):
    row = {param: value, "entry_count": "", "min_range": "", "convergence_time": "", "error": ""}
    try:
        cfg = RunConfig.from_dict(cfg_dict).with_values(**{param: value})
        _, s = simulate(cfg.sim_config())
    except Exception as exc:  # one bad run must not abort the sweep
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row["entry_count"] = s.entry_count
    row["min_range"] = f"{s.min_range:.9g}"
    row["convergence_time"] = "" if s.convergence_time is None else f"{s.convergence_time:.9g}"
    return row


def _workers():
    env = os.environ.get("CIRCUMNAV_THREADS")
    if env:
        return max(1, int(env))
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def cmd_sweep(args) -> int:
    cfg = _load(args.config)
    _params(cfg)
    try:
        values = [float(v) for v in args.sweep_values.split(",") if v.strip()]
    except ValueError:
        values = []
    if not values or not all(math.isfinite(v) for v in values):
        args.parser.error("--sweep-values needs a comma-separated list of numbers")
    base = cfg.to_dict()
    jobs = [(base, args.sweep_param, v) for v in values]
    n = min(_workers(), len(jobs))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_sweep_row, *zip(*jobs)))
    else:
        rows = [_sweep_row(*job) for job in jobs]

    fields = (args.sweep_param,) + SWEEP_COLUMNS
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        fh = open(out / "sweep.csv", "w", newline="")
    else:
        fh = sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for row in rows:
            row[args.sweep_param] = f"{row[args.sweep_param]:.9g}"
            w.writerow(row)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    target = Path(args.path or args.out or ".")
    csv_path = target / "trajectory.csv" if target.is_dir() else target
    summary_path = csv_path.parent / "summary.json"
    if args.config:
        cfg = _load(args.config)
    else:
        try:
            with open(summary_path) as fh:
                cfg = RunConfig.from_dict(json.load(fh)["config"])
        except (OSError, KeyError, ValueError) as exc:
            _fail(EXIT_IO, f"cannot recover the run configuration from {summary_path}: {exc}")
    params = _params(cfg)
    _, W0 = initial_barrier(_sim_config(cfg, params))
    try:
        with open(csv_path, newline="") as fh:
            traj = read_trajectory_csv(fh)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read trajectory: {exc}")
    except TrajectoryFormatError as exc:
        _fail(EXIT_IO, f"malformed trajectory {csv_path}: {exc}")
    report = audit(traj, params, W0, cfg.controller_mode)
    dump_json(report.to_dict(), sys.stdout)
    return EXIT_OK if report.passed else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circumnav", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="print the derived design constants as JSON")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("simulate", help="run, audit, and write trajectory.csv and summary.json")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="one run per value of a parameter; writes sweep.csv")
    p.add_argument("--config", required=True)
    p.add_argument("--sweep-param", required=True, choices=SWEEP_PARAMS)
    p.add_argument("--sweep-values", required=True, help="comma-separated numbers")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep, parser=p)

    p = sub.add_parser("verify", help="re-audit a stored trajectory")
    p.add_argument("path", nargs="?", help="output directory or trajectory CSV")
    p.add_argument("--out", help="output directory (alternative to PATH)")
    p.add_argument("--config", help="use this config instead of the stored snapshot")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"circumnav: {exc}", file=sys.stderr)
        return exc.code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
