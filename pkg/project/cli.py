"""
Command-line front end: ``disc-mapf solve|check|generate|verify|bench``.

Exit codes: 0 solved / feasible / valid, 1 usage or input error,
2 infeasible or invalid, 3 unsupported.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from project.config import get_settings
from project.disc_solver import (
    Instance,
    OutcomeKind,
    check_feasibility,
    compress,
    plan_stats,
    solve,
    verify_report,
)
from project.errors import MapfError, StateSpaceTooLarge
from project.formats import (
    parse_graph,
    parse_instance,
    parse_plan,
    write_bench_csv,
    write_instance,
    write_plan,
    write_summary_csv,
)
from project.graph_core import underlying_graph
from project.instance_lab import (
    BenchRecord,
    BenchSweep,
    GenParams,
    gen_digraph,
    gen_instance,
    oracle_solve,
    run_bench,
    summarize,
)
from project.tree_solver import build_bct

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_UNSUPPORTED = 3


def int_range(text: str) -> list[int]:
    """
    Parses ``7``, ``1,2,5``, ``1..14`` or ``20..100:5`` (inclusive, with step).
    """
    try:
        if ".." in text:
            bounds, _, step = text.partition(":")
            low, high = bounds.split("..")
            return list(range(int(low), int(high) + 1, int(step or 1)))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _oracle_agrees(inst: Instance, feasible: bool) -> bool:
    try:
        expected = oracle_solve(inst).kind is OutcomeKind.FEASIBLE
    except StateSpaceTooLarge as e:
        logger.warning("oracle skipped: %s", e)
        return True
    if expected != feasible:
        logger.error("oracle says feasible=%s, solver says feasible=%s", expected, feasible)
    return expected == feasible


def cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance))
    if args.dump_tree:
        Path(args.dump_tree).write_text(build_bct(underlying_graph(inst.digraph)).dump())
    outcome = solve(inst)
    if args.oracle and not _oracle_agrees(inst, outcome.kind is OutcomeKind.FEASIBLE):
        return EXIT_ERROR
    if outcome.kind is OutcomeKind.INFEASIBLE:
        print(f"infeasible: {outcome.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if outcome.kind is OutcomeKind.UNSUPPORTED:
        print(f"unsupported: {outcome.reason}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    plan = compress(outcome.plan, inst) if args.compress else outcome.plan
    stats = plan_stats(inst, plan)
    stats.tree_moves = outcome.stats.tree_moves
    if args.stats:
        print(stats.model_dump_json(), file=sys.stderr)
    _emit(write_plan(plan, stats if args.stats else None), args.out)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance))
    feasible = check_feasibility(inst)
    if args.oracle and not _oracle_agrees(inst, feasible):
        return EXIT_ERROR
    print("feasible" if feasible else "infeasible")
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def cmd_generate(args: argparse.Namespace) -> int:
    settings = get_settings()
    params = GenParams(
        node_count=args.nodes,
        seed=args.seed,
        ws_k=args.ws_k if args.ws_k is not None else settings.ws_k,
        ws_p=args.ws_p if args.ws_p is not None else settings.ws_p,
    )
    inst = gen_instance(gen_digraph(params), args.agents, args.seed)
    _emit(write_instance(inst), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance))
    report = verify_report(inst, parse_plan(_read(args.plan)))
    if not report.valid:
        where = f" at move {report.failed_index}" if report.failed_index is not None else ""
        print(f"invalid{where}: {report.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    print("valid")
    return EXIT_OK


def _write_bench(records: list[BenchRecord], out: Path, summary: Path) -> None:
    out.write_text(write_bench_csv(records))
    summary.write_text(write_summary_csv(summarize(records)))


def cmd_bench(args: argparse.Namespace) -> int:
    graph = parse_graph(_read(args.graph)) if args.graph else None
    sweep = BenchSweep(
        node_counts=args.nodes,
        agent_counts=args.agents,
        repetitions=args.reps,
        seed=args.seed,
        ws_k=args.ws_k,
        ws_p=args.ws_p,
        graph=graph,
        workers=args.workers,
    )
    out = Path(args.out)
    summary = Path(args.summary) if args.summary else out.with_name(f"{out.stem}_summary.csv")
    cells = [graph.vertex_count] if graph is not None else sweep.node_counts
    records: list[BenchRecord] = []
    try:
        for nodes in cells:
            records.extend(run_bench(sweep.model_copy(update={"node_counts": [nodes]})))
            _write_bench(records, out, summary)
    except KeyboardInterrupt:
        logger.warning("interrupted, %d records written to %s", len(records), out)
        _write_bench(records, out, summary)
        return EXIT_ERROR
    logger.info("wrote %d records to %s and %s", len(records), out, summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="disc-mapf", description="MAPF on strongly connected digraphs")
    parser.add_argument("--log-level", default=None, help="logging level (default from MAPF_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file and print the plan")
    p.add_argument("instance", help="instance file, '-' for standard input")
    p.add_argument("--out", help="write the plan here instead of standard output")
    p.add_argument("--compress", action="store_true", help="drop cancelling moves and hole shuffles")
    p.add_argument("--dump-tree", metavar="PATH", help="write the component tree to PATH")
    p.add_argument("--stats", action="store_true", help="print plan statistics to standard error")
    p.add_argument("--oracle", action="store_true", help="cross-check feasibility with the brute-force oracle")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("check", help="decide feasibility of an instance file")
    p.add_argument("instance")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("--nodes", type=int, default=20)
    p.add_argument("--agents", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ws-k", type=int, default=None)
    p.add_argument("--ws-p", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("verify", help="check a plan against an instance")
    p.add_argument("instance")
    p.add_argument("plan")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bench", help="run a benchmark sweep and write CSV files")
    p.add_argument("--nodes", type=int_range, default=int_range("20..100:5"))
    p.add_argument("--agents", type=int_range, default=[10])
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ws-k", type=int, default=None)
    p.add_argument("--ws-p", type=float, default=None)
    p.add_argument("--graph", help="benchmark on this graph file instead of generated ones")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default="bench.csv")
    p.add_argument("--summary", default=None, help="summary CSV (default <out>_summary.csv)")
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR
    logging.basicConfig(
        level=(args.log_level or get_settings().log_level).upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except (MapfError, OSError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
