"""Command-line front end: metrics, rank, sweep, validate, simulate.

Exit codes: 0 success, 1 a verification comparison failed, 2 usage error.
Results go to stdout (or ``--output``); diagnostics and logs go to stderr.
"""

import argparse
import io
import json
import logging
import sys
from typing import List, Optional

import pandas as pd

from . import config
from .demand import (
    FIGURES,
    ServiceTimes,
    SweepSeries,
    figure_series,
    rank,
    ranking_frame,
    sweep,
)
from .errors import GraphSizeError, HypernetError
from .ledger import DISCREPANCY_LEDGER
from .oracle import RoutingRule, build_graph, export_edge_list, verify_spec
from .sim import SimConfig, convergence_report, run
from .tools.fetch_preset_tool import PRESETS
from .tools.output_tool import (
    OutputRecord,
    export_edge_counts,
    write_csv,
    write_json_lines,
)
from .topology import Family, TopologySpec

logger = logging.getLogger(__name__)

EXAMPLES = """
Examples:
  %(prog)s metrics --family cayley -v 20 --radius 4
  %(prog)s rank --preset table3
  %(prog)s sweep --family hypercube --d-min 2 --d-max 21
  %(prog)s sweep --figure cube-torus --csv fig3.csv
  %(prog)s --seed 7 --format json simulate --family torus -d 2 -k 8 --pairs 100000
  %(prog)s validate --family hypercube -d 6 --pairs 100000 --seed 42
"""


def _uint64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value <= config.UINT64_MAX:
        raise argparse.ArgumentTypeError(f"seed {value} outside the unsigned 64-bit range")
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # global copies below hold the defaults; a subcommand flag overrides them
    common.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS, help="Output format")
    common.add_argument(
        "--output", "-o", default=argparse.SUPPRESS, help="Write results to PATH instead of stdout"
    )
    common.add_argument(
        "--seed", type=_uint64, default=argparse.SUPPRESS, help="Simulation seed (unsigned 64-bit)"
    )
    common.add_argument(
        "--discrepancies",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Print the ledger of reconciliations with the published figures",
    )

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", choices=[f.value for f in Family], help="Topology family")
    family.add_argument("-v", type=int, default=None, help="Tree valence")
    family.add_argument("--radius", type=int, default=None, help="Tree radius")
    family.add_argument("-d", type=int, default=None, help="Cube or torus dimension")
    family.add_argument("-k", type=float, default=None, help="Torus ring size")
    family.add_argument("--s-link", type=float, default=1.0, help="Link service time (default: 1)")
    family.add_argument("--s-peer", type=float, default=1.0, help="Peer service time (default: 1)")

    routing = argparse.ArgumentParser(add_help=False)
    routing.add_argument(
        "--rule",
        choices=[r.value for r in RoutingRule],
        default=RoutingRule.SMALLEST_ID.value,
        help="Shortest-path tie-breaking rule (default: smallest-id)",
    )

    parser = argparse.ArgumentParser(
        prog="hypernet",
        description="Scalability model of tree, hypercube and hypertorus overlays",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EXAMPLES,
    )
    parser.add_argument("--format", choices=["csv", "json"], default=None, help="Output format")
    parser.add_argument("--output", "-o", default=None, help="Write results to PATH instead of stdout")
    parser.add_argument("--seed", type=_uint64, default=None, help="Simulation seed (unsigned 64-bit)")
    parser.add_argument(
        "--discrepancies",
        action="store_true",
        default=False,
        help="Print the ledger of reconciliations with the published figures",
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    subparsers.add_parser("metrics", parents=[common, family], help="Structural and demand metrics")

    rank_parser = subparsers.add_parser("rank", parents=[common, family], help="Rank topologies")
    source = rank_parser.add_mutually_exclusive_group()
    source.add_argument("--preset", choices=PRESETS, default=None, help="Published table (default: table3)")
    source.add_argument("--spec-file", default=None, help="JSON list of topology specs")

    sweep_parser = subparsers.add_parser("sweep", parents=[common, family], help="Relative bandwidth series")
    sweep_parser.add_argument("--figure", choices=list(FIGURES), default=None, help="Emit all curves of a figure")
    sweep_parser.add_argument("--radius-min", type=int, default=None)
    sweep_parser.add_argument("--radius-max", type=int, default=None)
    sweep_parser.add_argument("--d-min", type=int, default=None)
    sweep_parser.add_argument("--d-max", type=int, default=None)
    sweep_parser.add_argument("--k-min", type=int, default=None)
    sweep_parser.add_argument("--k-max", type=int, default=None)
    sweep_parser.add_argument("--csv", default=None, help="Write the series CSV to PATH")

    validate_parser = subparsers.add_parser(
        "validate", parents=[common, family, routing], help="Check the model against explicit graphs"
    )
    validate_parser.add_argument("--pairs", type=int, default=None, help="Also simulate this many pairs")
    validate_parser.add_argument("--edge-list", default=None, help="Write the graph's edges to PATH")

    simulate_parser = subparsers.add_parser(
        "simulate", parents=[common, family, routing], help="Monte Carlo routing simulation"
    )
    simulate_parser.add_argument("--pairs", type=int, required=True, help="Number of sampled pairs")
    simulate_parser.add_argument("--edge-counts", default=None, help="Write per-edge counts to PATH")
    return parser


def _spec(args: argparse.Namespace) -> TopologySpec:
    if args.family is None:
        raise ValueError("--family is required")
    return TopologySpec(family=Family(args.family), v=args.v, radius=args.radius, d=args.d, k=args.k)


def _times(args: argparse.Namespace) -> ServiceTimes:
    return ServiceTimes(s_link=args.s_link, s_peer=args.s_peer)


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w") as file:
        file.write(text)
    logger.info(f"wrote {path}")


def cmd_metrics(args: argparse.Namespace) -> int:
    record = OutputRecord.from_spec(_spec(args), _times(args))
    text = write_json_lines([record]) if args.format == "json" else write_csv([record])
    _emit(text, args.output)
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    if args.spec_file is not None:
        with open(args.spec_file) as file:
            entries = json.load(file)
        if not isinstance(entries, list) or not all(isinstance(e, dict) for e in entries):
            raise ValueError(f"{args.spec_file} must hold a JSON list of spec objects")
        specs = [TopologySpec(**entry) for entry in entries]
    else:
        specs = args.preset or "table3"
    rows = rank(specs, _times(args))
    if not rows:
        _emit("", args.output)
        return 0
    if args.format == "json":
        text = write_json_lines(rows)
    else:
        text = ranking_frame(rows, rounded=True).to_csv(index=False, lineterminator="\n")
    _emit(text, args.output)
    return 0


def _series_frame(series: SweepSeries, start: int) -> pd.DataFrame:
    frame = series.to_frame().rename(columns={series.parameter: "param"})
    frame["x_relative"] = frame["x_relative"].map("{:.6f}".format)
    if series.truncated:
        first_overflow = series.points[-1].size + 1 if series.points else start
        marker = pd.DataFrame([[first_overflow, "", "truncated"]], columns=frame.columns)
        frame = pd.concat([frame.astype(object), marker], ignore_index=True)
    return frame


def _sweep_range(args: argparse.Namespace, family: Family):
    if family.is_tree:
        return args.radius_min, args.radius_max
    if family is Family.HYPERCUBE or args.k is not None:
        return args.d_min, args.d_max
    return args.k_min, args.k_max


def cmd_sweep(args: argparse.Namespace) -> int:
    times = _times(args)
    if args.figure is not None:
        series = figure_series(args.figure, times)
        starts = [start for _, _, start in FIGURES[args.figure]]
    else:
        if args.family is None:
            raise ValueError("sweep needs --family or --figure")
        family = Family(args.family)
        start, stop = _sweep_range(args, family)
        if start is None or stop is None:
            raise ValueError("sweep needs both ends of the range of its size parameter")
        fixed_d = args.d if family is Family.HYPERTORUS and args.k is None else None
        series = [sweep(family, start, stop, v=args.v, d=fixed_d, k=args.k, times=times)]
        starts = [start]

    if args.format == "json":
        text = write_json_lines(series)
    else:
        frames = []
        for s, start in zip(series, starts):
            frame = _series_frame(s, start)
            if args.figure is not None:
                frame.insert(0, "curve", s.label)
            frames.append(frame)
        buffer = io.StringIO()
        pd.concat(frames, ignore_index=True).to_csv(buffer, index=False, lineterminator="\n")
        text = buffer.getvalue()
    _emit(text, args.csv or args.output)
    return 0


def _report_text(report, convergence) -> str:
    lines = [f"{report.spec.label} ({report.spec.family.value})"]
    for c in report.comparisons:
        lines.append(f"  {c.metric}: {c.status.value} (analytic {c.analytic}, exact {c.exact})")
        if c.message:
            lines.append(f"    {c.message}")
    if convergence is not None:
        lines.append(
            f"simulation: {convergence.sampled_pairs} pairs, seed {convergence.seed}, "
            f"tolerance {convergence.tolerance:g}"
        )
        for m in convergence.metrics:
            mark = "ok" if m.within_tolerance else "outside tolerance"
            lines.append(
                f"  {m.metric}: estimate {m.estimate:.6g}, exact {m.exact:.6g}, "
                f"relative error {m.relative_error:.3g} ({mark})"
            )
        if convergence.insufficient_samples:
            lines.append("  too few samples for the tolerance to apply")
    lines.append(f"result: {'FAIL' if report.failed else 'PASS'}")
    return "\n".join(lines) + "\n"


def cmd_validate(args: argparse.Namespace) -> int:
    spec = _spec(args)
    rule = RoutingRule(args.rule)
    report = verify_spec(spec, rule)
    if args.edge_list is not None:
        export_edge_list(build_graph(spec), args.edge_list)

    convergence = None
    if args.pairs is not None:
        if report.exact is None:
            raise GraphSizeError(f"{spec.label} is too large to simulate")
        seed = args.seed if args.seed is not None else config.DEFAULT_SEED
        sim = SimConfig(spec=spec, pairs=args.pairs, seed=seed, times=_times(args), rule=rule)
        convergence = convergence_report(sim, report.exact)
        if convergence.flagged:
            logger.warning(f"simulation of {spec.label} did not converge within tolerance")

    if args.format == "json":
        payload = {
            "verification": report.model_dump(mode="json"),
            "convergence": convergence.model_dump(mode="json") if convergence else None,
        }
        text = json.dumps(payload) + "\n"
    else:
        text = _report_text(report, convergence)
    _emit(text, args.output)
    return 1 if report.failed else 0


def cmd_simulate(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else config.DEFAULT_SEED
    sim = SimConfig(
        spec=_spec(args), pairs=args.pairs, seed=seed, times=_times(args), rule=RoutingRule(args.rule)
    )
    result = run(sim)
    if args.edge_counts is not None:
        export_edge_counts(result, args.edge_counts)

    if args.format == "json":
        text = write_json_lines([result])
    else:
        summary = result.model_dump(mode="json", exclude={"spec", "edge_counts"})
        text = pd.DataFrame([summary]).to_csv(index=False, lineterminator="\n")
    _emit(text, args.output)
    return 0


COMMANDS = {
    "metrics": cmd_metrics,
    "rank": cmd_rank,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "simulate": cmd_simulate,
}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=config.LOG_LEVEL,
        format="%(asctime)s - %(levelname)s - %(message)s",
    )
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if args.discrepancies:
        # keep stdout parseable when a command also runs
        stream = sys.stderr if args.command else sys.stdout
        stream.write(DISCREPANCY_LEDGER.lstrip("\n"))
    if args.command is None:
        if not args.discrepancies:
            parser.print_usage(sys.stderr)
            return 2
        return 0

    logger.info(f"running {args.command}")
    try:
        return COMMANDS[args.command](args)
    except (HypernetError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
