"""Command line front end: ``psopath run | replicate | sweep``.

Exit status is 0 on success, 1 for usage or validation errors and 2 for
I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from .errors import InvalidInputError
from .reporting import aggregate, emit_plots, error_series_csv, runs_csv
from .scenario_io import parse_scenario, scenario_to_dict, serialize_result
from .simulator import MAX_SEED, Scenario, run

log = logging.getLogger("psopath")

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2

# sweepable parameter -> location in the scenario document
SWEEP_PARAMS = {
    "n_particles": ("pso", "n_particles"),
    "w": ("pso", "w"),
    "c1": ("pso", "c1"),
    "c2": ("pso", "c2"),
    "v_max": ("pso", "v_max"),
    "collision_mode": ("policy", "collision_mode"),
    "on_reject": ("policy", "on_reject"),
    "wall_margin": ("policy", "wall_margin"),
    "epsilon": ("stop", "epsilon"),
    "max_iterations": ("stop", "max_iterations"),
    "spread": (None, "spread"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2**64 - 1], got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="psopath", description="PSO path planning in a 2D space with obstacles.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="execute one seeded run and write traces and plots")
    p.add_argument("scenario", type=Path)
    p.add_argument("--seed", type=_seed, help="override the scenario seed")
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: out)")

    def add_batch_args(p):
        p.add_argument("scenario", type=Path)
        p.add_argument("--runs", type=_positive_int, default=100, help="runs per report (default: 100)")
        p.add_argument("--seed-base", type=_seed, help="first seed (default: the scenario seed)")
        p.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: out)")
        p.add_argument("--workers", type=_positive_int, default=1, help="worker processes (default: 1)")

    p = sub.add_parser("replicate", help="run seeds S..S+K-1 and write the step distribution")
    add_batch_args(p)

    p = sub.add_parser("sweep", help="replicate once per value of one parameter")
    add_batch_args(p)
    p.add_argument("--param", required=True, choices=sorted(SWEEP_PARAMS))
    p.add_argument("--values", required=True, help="comma separated values")
    return parser


def load_scenario(path: Path) -> Scenario:
    text = path.read_text(encoding="utf-8")
    return parse_scenario(text)


def with_param(scenario: Scenario, name: str, raw: str) -> Scenario:
    """Copy of ``scenario`` with one parameter replaced, revalidated through the parser."""
    section, key = SWEEP_PARAMS[name]
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    doc = scenario_to_dict(scenario)
    if section is None:
        doc[key] = value
    else:
        doc[section][key] = value
    return parse_scenario(json.dumps(doc))


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")


def replicate_runs(scenario: Scenario, runs: int, seed_base: int, workers: int = 1):
    if seed_base + runs - 1 > MAX_SEED:
        raise InvalidInputError("seed range exceeds 64 bits")
    scenarios = [replace(scenario, seed=seed_base + k) for k in range(runs)]
    if workers <= 1:
        return [run(s) for s in scenarios]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, scenarios, chunksize=max(1, runs // (4 * workers))))


def cmd_run(args) -> None:
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = replace(scenario, seed=args.seed)
    result = run(scenario)
    args.out.mkdir(parents=True, exist_ok=True)
    _write(args.out / "summary.txt", serialize_result(result, "summary"))
    _write(args.out / "trace.csv", serialize_result(result, "trace_csv"))
    _write(args.out / "path.csv", serialize_result(result, "path_csv"))
    _write(args.out / "errors.csv", error_series_csv(result))
    emit_plots(result, args.out)
    print(serialize_result(result, "summary"), end="")


def _replicate_into(scenario: Scenario, scenario_id: str, args, out: Path):
    seed_base = scenario.seed if args.seed_base is None else args.seed_base
    log.info("%s: %d runs from seed %d", scenario_id, args.runs, seed_base)
    results = replicate_runs(scenario, args.runs, seed_base, args.workers)
    report = aggregate(results, scenario_id)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "report.txt", report.to_text())
    _write(out / "runs.csv", runs_csv(results))
    return report


def cmd_replicate(args) -> None:
    scenario = load_scenario(args.scenario)
    report = _replicate_into(scenario, args.scenario.stem, args, args.out)
    print(report.to_text(), end="")


def cmd_sweep(args) -> None:
    base = load_scenario(args.scenario)
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    if not values:
        raise UsageError("sweep: --values is empty")
    variants = [(v, with_param(base, args.param, v)) for v in values]
    rows = ["param,value,runs,converged_count,steps_min,steps_median,steps_max,steps_mean"]
    for value, scenario in variants:
        sid = f"{args.scenario.stem}:{args.param}={value}"
        report = _replicate_into(scenario, sid, args, args.out / f"{args.param}={value}")
        fields = report.to_text().splitlines()
        stats = [f.split("=", 1)[1] for f in fields[1:7]]
        rows.append(",".join([args.param, value, *stats]))
        print(f"{args.param}={value}: converged {report.converged_count}/{report.runs}, "
              f"median steps {report.steps_median}")
    _write(args.out / "sweep.csv", "\n".join(rows) + "\n")


COMMANDS = {"run": cmd_run, "replicate": cmd_replicate, "sweep": cmd_sweep}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        COMMANDS[args.command](args)
    except (UsageError, InvalidInputError) as exc:
        print(f"psopath: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"psopath: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
