"""Command-line front end.

    tunnelsim <subcommand> --config <path|builtin:name> [--output <path>] [--grid START STOP POINTS]

Exit codes: 0 success, 2 invalid scenario document or arguments, 1 runtime
error (including drive points a well-formed scenario cannot be evaluated at).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

from .dispersion import FieldKind
from .errors import TunnelSimError
from .scenarios.config import GridSpec, ScenarioValidationError, parse_quantity
from .scenarios.library import builtin_names, load_path
from .scenarios.run import (
    emit_arrival_text,
    emit_csv,
    emit_hartman_csv,
    emit_timeseries_csv,
    emit_virtuality_text,
    run_scenario,
)
from .scenarios.table1 import render_table1, table1_report

log = logging.getLogger("tunnelsim")

EXIT_OK, EXIT_RUNTIME, EXIT_INVALID = 0, 1, 2


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to a temporary file next to ``path`` and rename it into place."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _grid_override(cfg, values):
    start_s, stop_s, points_s = values
    dims = ("energy",) if cfg.field_kind is FieldKind.QUANTUM else ("angular_frequency",)
    start, quantity = parse_quantity(start_s, dims, "--grid start")
    stop, _ = parse_quantity(stop_s, dims, "--grid stop")
    try:
        points = int(points_s)
    except ValueError:
        raise ScenarioValidationError(f"--grid points: expected an integer, got {points_s!r}") from None
    return cfg.with_grid(GridSpec(start, stop, points, quantity))


def _with_analyses(cfg, analyses):
    return replace(cfg, analyses=tuple(analyses))


def _load(args):
    if args.config is None:
        raise ScenarioValidationError("--config is required for this subcommand")
    cfg = load_path(args.config)
    if args.grid:
        cfg = _grid_override(cfg, args.grid)
    return cfg


def cmd_scatter(args):
    cfg = _with_analyses(_load(args), ["scatter"])
    return emit_csv(run_scenario(cfg))


def cmd_phasetime(args):
    cfg = _with_analyses(_load(args), ["scatter", "phasetime"])
    return emit_csv(run_scenario(cfg))


def cmd_hartman(args):
    cfg = _load(args)
    if cfg.hartman is None:
        raise ScenarioValidationError(f"scenario {cfg.name!r} has no hartman section")
    report = run_scenario(_with_analyses(cfg, ["hartman"]))
    return emit_hartman_csv(report.hartman)


def cmd_pulse(args):
    cfg = _load(args)
    if cfg.pulse is None:
        raise ScenarioValidationError(f"scenario {cfg.name!r} has no pulse section")
    report = run_scenario(_with_analyses(cfg, ["pulse"]))
    sys.stderr.write(emit_arrival_text(report.arrival))
    return emit_timeseries_csv(report)


def cmd_table1(args):
    return render_table1(table1_report(simulate=not args.no_simulation))


def cmd_check(args):
    report = run_scenario(_with_analyses(_load(args), ["virtuality"]))
    return emit_virtuality_text(report)


COMMANDS = {
    "scatter": (cmd_scatter, "reflection/transmission spectrum as CSV"),
    "phasetime": (cmd_phasetime, "spectrum plus phase time as CSV"),
    "hartman": (cmd_hartman, "phase time versus barrier length as CSV"),
    "pulse": (cmd_pulse, "transmitted/reflected pulse time series as CSV"),
    "table1": (cmd_table1, "measured vs 1/nu tunneling times, fixed-width text"),
    "check": (cmd_check, "virtuality predicates as key = value text"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tunnelsim", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help=f"scenario file or builtin:NAME ({', '.join(builtin_names())})")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--grid", nargs=3, metavar=("START", "STOP", "POINTS"),
                       help='drive grid override, e.g. --grid "8 GHz" "9 GHz" 201')
        if name == "table1":
            p.add_argument("--no-simulation", action="store_true",
                           help="only print the measured data")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    func = COMMANDS[args.command][0]
    try:
        text = func(args)
        if args.output:
            write_atomic(args.output, text)
        else:
            sys.stdout.write(text)
    except ScenarioValidationError as exc:
        sys.stderr.write(f"tunnelsim: invalid configuration: {exc}\n")
        return EXIT_INVALID
    except (TunnelSimError, OSError) as exc:
        sys.stderr.write(f"tunnelsim: error: {exc}\n")
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
