"""Command-line front end.

Exit codes:
    0   success
    1   oracle-check found a mechanism above tolerance or not converged
    2   invalid configuration, model range error or bad usage
    66  configuration file not found
    73  output file could not be written
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .config import ConfigError, ConfigFileNotFound, json_schema, load_scenario
from .crosscheck import cross_check
from .profiles import ProfileRangeError
from .report import budget_csv, budget_json, sweep_csv, sweep_json
from .scenario import ScenarioError, SweepError, check_scenario, run_budget, run_sweep
from .templates import TEMPLATES, template

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_INPUT = 66
EXIT_CANT_CREATE = 73

log = logging.getLogger("coexnoise")


def _emit(text: str, output: str | None) -> int:
    if output is None or output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return EXIT_OK
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as exc:
        log.error("cannot write %s: %s", output, exc)
        return EXIT_CANT_CREATE
    log.info("wrote %s", output)
    return EXIT_OK


def _report_problems(problems) -> int:
    for p in problems:
        print(f"error: {p}", file=sys.stderr)
    return EXIT_INVALID


def _load(path):
    """Returns (scenario, quadrature config) or an exit code."""
    try:
        return load_scenario(path)
    except ConfigFileNotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_INPUT
    except ConfigError as exc:
        return _report_problems(exc.problems)


def cmd_validate(args) -> int:
    loaded = _load(args.config)
    if isinstance(loaded, int):
        return loaded
    scenario, _ = loaded
    try:
        check_scenario(scenario)
    except ScenarioError as exc:
        return _report_problems(exc.problems)
    n = len(scenario.sweep.values) if scenario.sweep else 1
    print(f"ok: {args.config} ({len(scenario.plan)} channels, {n} point(s))", file=sys.stderr)
    return EXIT_OK


def cmd_run(args) -> int:
    loaded = _load(args.config)
    if isinstance(loaded, int):
        return loaded
    scenario, _ = loaded
    try:
        budget = run_budget(scenario)
    except ScenarioError as exc:
        return _report_problems(exc.problems)
    except ProfileRangeError as exc:
        return _report_problems([str(exc)])
    text = budget_csv(budget) if args.format == "csv" else budget_json(budget)
    return _emit(text, args.output)


def cmd_sweep(args) -> int:
    loaded = _load(args.config)
    if isinstance(loaded, int):
        return loaded
    scenario, _ = loaded
    if scenario.sweep is None:
        return _report_problems(["sweep: config defines no sweep axis"])
    started = time.perf_counter()
    try:
        points = run_sweep(scenario, threads=args.threads)
    except SweepError as exc:
        return _report_problems([f"sweep {scenario.sweep.axis}={v:g}: {msg}" for v, msg in exc.failures])
    except ScenarioError as exc:
        return _report_problems(exc.problems)
    log.info("%d sweep points in %.2f s", len(points), time.perf_counter() - started)
    if args.format == "csv":
        text = sweep_csv(points)
    else:
        text = sweep_json(scenario.sweep.axis, scenario.sweep.unit, points)
    return _emit(text, args.output)


def cmd_oracle_check(args) -> int:
    loaded = _load(args.config)
    if isinstance(loaded, int):
        return loaded
    scenario, cfg = loaded
    if args.tolerance is not None and not args.tolerance > 0:
        return _report_problems(["--tolerance must be > 0"])
    tolerance = args.tolerance if args.tolerance is not None else 1e-8
    try:
        rows = cross_check(scenario, cfg, tolerance)
    except ScenarioError as exc:
        return _report_problems(exc.problems)
    if args.format == "json":
        text = json.dumps(
            {"tolerance": tolerance, "rows": [r.__dict__ for r in rows]}, indent=2, allow_nan=True
        ) + "\n"
    else:
        lines = ["mechanism,item,closed_form,oracle,rel_error,status"]
        for r in rows:
            lines.append(f"{r.mechanism},\"{r.item}\",{r.closed_form!r},{r.oracle!r},{r.rel_error!r},{r.status}")
        text = "\n".join(lines) + "\n"
    code = _emit(text, args.output)
    if code != EXIT_OK:
        return code
    bad = [r for r in rows if r.status != "ok"]
    if bad:
        log.error("%d of %d checks failed", len(bad), len(rows))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_example(args) -> int:
    try:
        doc = template(args.name)
    except KeyError:
        print(f"error: unknown example '{args.name}'; available: {', '.join(sorted(TEMPLATES))}", file=sys.stderr)
        return EXIT_INVALID
    return _emit(json.dumps(doc, indent=2) + "\n", args.output)


def cmd_schema(args) -> int:
    return _emit(json.dumps(json_schema(), indent=2) + "\n", args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coexnoise", description="Noise budgets for quantum channels sharing a fiber with classical WDM traffic."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbose = argparse.ArgumentParser(add_help=False)
    verbose.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--config", required=True, help="scenario JSON file")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="output path (default: stdout)")

    p = sub.add_parser("run", parents=[verbose], help="noise budget at the scenario's base point")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", parents=[verbose], help="noise budget at every sweep point")
    common(p)
    p.add_argument("--threads", type=int, default=0, help="worker threads (0 = auto)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", parents=[verbose], help="check a scenario without running it")
    p.add_argument("--config", required=True, help="scenario JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle-check", parents=[verbose], help="compare closed forms with numerical quadrature")
    common(p)
    p.add_argument("--tolerance", type=float, default=None, help="max relative error (default 1e-8)")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("example", parents=[verbose], help="write a named example scenario")
    p.add_argument("name", help=f"one of: {', '.join(sorted(TEMPLATES))}")
    p.add_argument("--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("schema", parents=[verbose], help="print the scenario JSON schema")
    p.add_argument("--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_schema)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
