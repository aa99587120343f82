"""Command-line entry point: ``truth-table``, ``verify``, ``cost`` and ``plot``.

Exit status: 0 on success, 1 when a check or data step fails, 2 for usage
errors.  Options may also come from a flat ``key = value`` file given with
``--config``; flags on the command line win over the file.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from . import analytic, planner, report, verify
from .core import SchemeId
from .montecarlo import StrategyConfig, default_sets, mc_recycle, sets_from_bounds


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _scheme(text: str) -> SchemeId:
    try:
        return SchemeId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


# config-file key -> converter; also the set of keys a file may contain
CONFIG_KEYS: dict[str, Callable[[str], object]] = {
    "scheme": _scheme,
    "runs": int,
    "seed": int,
    "out": str,
    "bell_bin": _bool,
    "sets": _int_list,
    "targets": _int_list,
    "steps": int,
    "mode": str,
    "policy": str,
    "workers": int,
    "max_size": int,
    "title": str,
}

DEFAULTS = {
    "scheme": SchemeId.THREE_STATE,
    "runs": 1000,
    "seed": 0,
    "out": None,
    "bell_bin": False,
    "sets": None,
    "targets": None,
    "steps": None,
    "mode": "norecycle",
    "policy": "lowest",
    "workers": 1,
    "max_size": 4,
    "title": "Resource cost",
}


class UsageError(Exception):
    pass


def load_config(path: str) -> dict[str, object]:
    values: dict[str, object] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = CONFIG_KEYS[key](value.strip())
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    shared.add_argument("--scheme", type=_scheme, help="three | two-basic | two-enhanced")
    shared.add_argument("--runs", type=int, help="Monte Carlo runs per target (default 1000)")
    shared.add_argument("--seed", type=int, help="master seed (default 0)")
    shared.add_argument("--out", help="output path (default: stdout)")
    shared.add_argument("--config", help="key = value file with defaults for these options")
    shared.add_argument("--bell-bin", dest="bell_bin", action="store_true", help="keep W2 states for reuse")
    shared.add_argument("--sets", type=_int_list, help="set lower bounds, e.g. 3,4,7,16,43,124")

    parser = argparse.ArgumentParser(prog="wfusion", description="W state fusion simulator and cost planner")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("truth-table", parents=[shared], argument_default=argparse.SUPPRESS, help="three-state truth table as CSV")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("t", type=int)

    p = sub.add_parser("verify", parents=[shared], argument_default=argparse.SUPPRESS, help="oracle vs analytic equivalence matrix")
    p.add_argument("--max-size", dest="max_size", type=int, help="largest W size checked (default 4)")

    p = sub.add_parser("cost", parents=[shared], argument_default=argparse.SUPPRESS, help="resource cost table as CSV")
    p.add_argument("--targets", type=_int_list, help="sizes (norecycle) or set indices (recycle)")
    p.add_argument("--steps", type=int, help="norecycle: use the equal-size sequence with this many steps")
    p.add_argument("--mode", choices=["norecycle", "recycle"])
    p.add_argument("--policy", choices=["lowest", "highest"], help="which ready set fires first")
    p.add_argument("--workers", type=int, help="processes for Monte Carlo runs")

    p = sub.add_parser("plot", parents=[shared], argument_default=argparse.SUPPRESS, help="SVG chart from cost CSV files")
    p.add_argument("csv", nargs="+")
    p.add_argument("--title")
    return parser


def _options(args: argparse.Namespace) -> dict[str, object]:
    opts = dict(DEFAULTS)
    if getattr(args, "config", None):
        opts.update(load_config(args.config))
    opts.update({k: v for k, v in vars(args).items() if k in CONFIG_KEYS})
    return opts


def cmd_truth_table(n: int, m: int, t: int, out: Optional[str] = None, stream=None) -> str:
    rows = analytic.truth_table3(n, m, t)
    text = report.render_csv(report.TRUTH_TABLE_COLUMNS, report.truth_table_rows(rows))
    report.maybe_write(out, text, stream or sys.stdout)
    return text


def cmd_verify(max_size: int, stream=None) -> int:
    stream = stream or sys.stdout
    results = verify.run_matrix(max_size)
    for res in results:
        print(res.line(), file=stream)
    failed = [r for r in results if not r.ok]
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed", file=stream)
        return 1
    print(f"all checks passed ({len(results)} configurations)", file=stream)
    return 0


def cmd_cost(
    scheme: SchemeId | str,
    targets: Sequence[int],
    mode: str = "norecycle",
    runs: int = 1000,
    seed: int = 0,
    out: Optional[str] = None,
    bell_bin: bool = False,
    sets: Optional[Sequence[int]] = None,
    policy: str = "lowest",
    workers: int = 1,
    stream=None,
) -> tuple[str, int]:
    """Build the cost CSV; returns (text, exit status)."""
    scheme = SchemeId.parse(scheme)
    rows, points, status = [], [], 0
    boundaries = sets_from_bounds(sets) if sets else default_sets(scheme)
    for target in targets:
        try:
            if mode == "norecycle":
                cost = planner.dp_norecycle(scheme, target).cost
                rows.append(report.norecycle_row(str(scheme), target, cost))
                points.append((target, cost))
            else:
                config = StrategyConfig(scheme, boundaries, target, runs, seed, bell_bin, policy)
                record = mc_recycle(config, workers=workers)
                rows.append(report.recycle_row(record))
                points.append((record.mean_size, record.mean_cost))
        except ValueError as exc:
            rows.append(report.error_row(str(scheme), target, mode, str(exc)))
            status = 1
    if len(points) >= 3:
        points.sort()
        try:
            rows.append(report.fit_row(str(scheme), mode, planner.fit_exponent(points)))
        except ValueError as exc:
            rows.append(report.error_row(str(scheme), report.FIT_MARKER, mode, str(exc)))
    text = report.render_csv(report.COST_COLUMNS, rows)
    report.maybe_write(out, text, stream or sys.stdout)
    return text, status


def cmd_plot(csv_paths: Sequence[str], out_svg: Optional[str] = None, title: str = "Resource cost", stream=None) -> str:
    points = []
    for path in csv_paths:
        points += report.parse_cost_csv(report.read_text(path), source=path)
    svg = report.render_svg(points, title=title)
    report.maybe_write(out_svg, svg, stream or sys.stdout)
    return svg


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = _options(args)
    except (UsageError, OSError) as exc:
        parser.error(str(exc))

    try:
        if args.command == "truth-table":
            try:
                cmd_truth_table(args.n, args.m, args.t, opts["out"])
            except ValueError as exc:
                parser.error(str(exc))
            return 0

        if args.command == "verify":
            try:
                return cmd_verify(opts["max_size"])
            except ValueError as exc:
                parser.error(str(exc))

        if args.command == "cost":
            scheme = opts["scheme"]
            if opts["targets"]:
                targets = opts["targets"]
            elif opts["steps"] is not None and opts["mode"] == "norecycle":
                targets = planner.equal_size_sequence(scheme, opts["steps"])
            else:
                parser.error("cost needs --targets (or --steps in norecycle mode)")
            if opts["mode"] not in ("norecycle", "recycle"):
                parser.error(f"unknown mode {opts['mode']!r}")
            if opts["sets"]:
                try:
                    StrategyConfig(scheme, sets_from_bounds(opts["sets"]), 1)
                except ValueError as exc:
                    parser.error(f"--sets: {exc}")
            _, status = cmd_cost(
                scheme,
                targets,
                mode=opts["mode"],
                runs=opts["runs"],
                seed=opts["seed"],
                out=opts["out"],
                bell_bin=opts["bell_bin"],
                sets=opts["sets"],
                policy=opts["policy"],
                workers=opts["workers"],
            )
            return status

        if args.command == "plot":
            try:
                cmd_plot(args.csv, opts["out"], title=opts["title"])
            except (ValueError, OSError) as exc:
                print(f"wfusion plot: {exc}", file=sys.stderr)
                return 1
            return 0
    except BrokenPipeError:
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
