"""Batch entry points: validate, scripted runs, coverage sweeps, serving.

Exit codes: 0 success, 1 validation or input failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional, Sequence

from . import control_service, sim_engine

DEFAULT_SWEEP_DISTANCES = (50.0, 100.0, 200.0, 400.0, 600.0, 800.0, 1000.0, 1200.0)
DEFAULT_SWEEP_HEIGHTS = (10.0, 30.0, 50.0, 100.0)


def _load(path: str) -> sim_engine.Scenario:
    try:
        return sim_engine.load_scenario(path)
    except OSError as err:
        raise SystemExit(_fail(f"cannot read scenario: {err}"))
    except (json.JSONDecodeError, sim_engine.ScenarioError, KeyError, ValueError) as err:
        raise SystemExit(_fail(f"bad scenario {path!r}: {err}"))


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return 1


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _read_command_trace(path: str) -> list[tuple[float, str, tuple[float, float, float]]]:
    """Command trace CSV: t_s,node_id,vx,vy,vz (header optional)."""
    schedule = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().lower() == "t_s":
                continue
            if len(row) != 5:
                raise ValueError(f"trace row needs 5 fields: {row!r}")
            t_s, node_id, vx, vy, vz = row
            schedule.append(
                (float(t_s), node_id.strip(), (float(vx), float(vy), float(vz)))
            )
    return schedule


def cmd_validate(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    violations = sim_engine.validate(scenario)
    if violations:
        for violation in violations:
            print(violation, file=sys.stderr)
        return 1
    print(f"{args.scenario}: OK")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    violations = sim_engine.validate(scenario)
    if violations:
        return _fail("; ".join(violations))
    schedule = []
    if args.commands:
        try:
            schedule = _read_command_trace(args.commands)
        except (OSError, ValueError) as err:
            return _fail(f"bad command trace: {err}")
    duration = args.duration if args.duration is not None else scenario.duration_s
    if duration is None:
        return _fail("scenario has no duration; pass --duration for batch runs")
    samples = sim_engine.run_scripted(scenario, schedule, duration_s=duration)
    with open(args.out, "w", newline="") as fh:
        sim_engine.write_telemetry(samples, fh)
    print(f"wrote {len(samples)} samples to {args.out}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    try:
        grid = sim_engine.sweep(scenario, args.distances, args.heights)
    except (sim_engine.ScenarioError, ValueError) as err:
        return _fail(str(err))
    with open(args.out, "w", newline="") as fh:
        sim_engine.write_sweep(grid, fh)
    print(f"wrote {len(grid)} grid points to {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    violations = sim_engine.validate(scenario)
    if violations:
        return _fail("; ".join(violations))
    sink = open(args.out, "w", newline="") if args.out else None
    try:
        control_service.serve(
            scenario, host=args.host, port=args.port, pace=args.pace, telemetry_sink=sink
        )
    finally:
        if sink is not None:
            sink.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aerocell", description="UAV cellular link simulator"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file, print violations")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="scripted batch flight writing telemetry CSV")
    p.add_argument("scenario")
    p.add_argument("--commands", help="command trace CSV: t_s,node_id,vx,vy,vz")
    p.add_argument("--out", required=True, help="telemetry CSV output path")
    p.add_argument("--duration", type=float, help="override run duration in seconds")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="static coverage grid writing a CSV")
    p.add_argument("scenario")
    p.add_argument(
        "--distances", type=_parse_grid, default=list(DEFAULT_SWEEP_DISTANCES),
        help="comma-separated horizontal distances in meters",
    )
    p.add_argument(
        "--heights", type=_parse_grid, default=list(DEFAULT_SWEEP_HEIGHTS),
        help="comma-separated heights in meters",
    )
    p.add_argument("--out", required=True, help="grid CSV output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP control/telemetry service")
    p.add_argument("scenario")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=control_service.DEFAULT_PORT)
    p.add_argument("--pace", choices=("real", "max"), default="real")
    p.add_argument("--out", help="also log telemetry to this CSV, flushed per tick")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as err:
        raise err
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
