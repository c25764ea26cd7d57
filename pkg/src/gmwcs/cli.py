"""Command line front end: solve, generate and bench subcommands."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import run_bench
from .formulation import ModelOptions, build_model, export_lp
from .generate import generate_instance
from .instance_io import ParseError, format_solution, parse_instance, write_instance
from .oracle import brute_force
from .results import OPTIMAL, SolveConfig
from .solver import solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmwcs",
        description="Exact solver for the (rooted) generalized maximum-weight "
        "connected subgraph problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance")
    p_solve.add_argument("-n", "--nodes", required=True, help="nodes file")
    p_solve.add_argument("-e", "--edges", required=True, help="edges file")
    p_solve.add_argument("-r", "--root", default=None, help="root node id (rooted variant)")
    p_solve.add_argument("-t", "--time-limit", type=float, default=None, metavar="SECONDS")
    p_solve.add_argument("-m", "--workers", type=int, default=1)
    p_solve.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    p_solve.add_argument("--export-lp", default=None, metavar="PATH",
                         help="write the MIP model as LP text and exit")
    p_solve.add_argument("--no-preprocess", action="store_true")
    p_solve.add_argument("--no-decompose", action="store_true")
    p_solve.add_argument("--no-symmetry", action="store_true")
    p_solve.add_argument("--no-bfs", action="store_true")
    p_solve.add_argument("--oracle", action="store_true",
                         help="force the brute-force oracle (small instances only)")
    p_solve.add_argument("--nonempty", action="store_true",
                         help="disallow the empty solution")

    p_gen = sub.add_parser("generate", help="generate a random connected instance")
    p_gen.add_argument("--nodes", type=int, required=True, metavar="N")
    p_gen.add_argument("--density", type=float, required=True, metavar="P")
    p_gen.add_argument("--weight-range", required=True, metavar="LO,HI")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", required=True, metavar="STEM",
                       help="write STEM.nodes and STEM.edges")

    p_bench = sub.add_parser("bench", help="timed repeated solves over a directory")
    p_bench.add_argument("directory", help="directory of <stem>.nodes/<stem>.edges pairs")
    p_bench.add_argument("-R", "--repeats", type=int, default=10)
    p_bench.add_argument("-t", "--time-limit", type=float, default=None, metavar="SECONDS")
    p_bench.add_argument("-m", "--workers", type=int, default=1)
    p_bench.add_argument("-o", "--output", default=None, help="TSV output file (default: stdout)")
    return parser


def _write_output(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _cmd_solve(args) -> int:
    parsed = parse_instance(args.nodes, args.edges, root=args.root)
    if args.export_lp is not None:
        options = ModelOptions(
            symmetry_breaking=not args.no_symmetry,
            bfs_restriction=not args.no_bfs,
        )
        Path(args.export_lp).write_text(export_lp(build_model(parsed.instance, options)))
        return EXIT_OK
    if args.oracle:
        result = brute_force(parsed.instance, allow_empty=not args.nonempty)
    else:
        config = SolveConfig(
            time_limit=args.time_limit,
            worker_count=args.workers,
            preprocess=not args.no_preprocess,
            decompose=not args.no_decompose,
            symmetry_breaking=not args.no_symmetry,
            bfs_restriction=not args.no_bfs,
            allow_empty_solution=not args.nonempty,
        )
        result = solve(parsed.instance, config)
    _write_output(format_solution(result, parsed), args.output)
    return EXIT_OK if result.status == OPTIMAL else EXIT_TIMEOUT


def _cmd_generate(args) -> int:
    lo_hi = args.weight_range.split(",")
    if len(lo_hi) != 2:
        raise ValueError(f"--weight-range expects 'lo,hi', got {args.weight_range!r}")
    weight_range = (float(lo_hi[0]), float(lo_hi[1]))
    parsed = generate_instance(args.nodes, args.density, weight_range, args.seed)
    write_instance(parsed, f"{args.out}.nodes", f"{args.out}.edges")
    return EXIT_OK


def _cmd_bench(args) -> int:
    report = run_bench(
        args.directory,
        repeats=args.repeats,
        time_limit=args.time_limit,
        workers=args.workers,
    )
    _write_output(report, args.output)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "generate":
            return _cmd_generate(args)
        return _cmd_bench(args)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
