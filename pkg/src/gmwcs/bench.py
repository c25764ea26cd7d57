"""Benchmark runner: repeated timed solves over a directory of instances.

An instance is a ``<stem>.nodes`` / ``<stem>.edges`` file pair.  Every
instance is solved R times; the report carries the median plus the second
minimal and second maximal times (the statistics behind the comparison
plots), the final status and the weight.
"""

from __future__ import annotations

import statistics
import sys
import time
from pathlib import Path

from .formulation import format_number
from .instance_io import parse_instance
from .results import SolveConfig
from .solver import solve

TSV_HEADER = "instance\tn\tm\tmedian_s\tp2min_s\tp2max_s\tstatus\tweight"


def discover_instances(directory) -> list[tuple[str, Path, Path]]:
    directory = Path(directory)
    found = []
    for nodes_path in sorted(directory.glob("*.nodes")):
        edges_path = nodes_path.with_suffix(".edges")
        if edges_path.exists():
            found.append((nodes_path.stem, nodes_path, edges_path))
    return found


def run_bench(
    directory,
    repeats: int = 10,
    time_limit: float | None = None,
    workers: int = 1,
    stream=None,
) -> str:
    """Solve each instance ``repeats`` times; returns (and streams) the TSV."""
    config = SolveConfig(time_limit=time_limit, worker_count=workers)
    lines = [TSV_HEADER]
    skipped = []
    for stem, nodes_path, edges_path in discover_instances(directory):
        try:
            parsed = parse_instance(nodes_path, edges_path)
        except (OSError, ValueError) as exc:
            print(f"warning: skipping {stem}: {exc}", file=sys.stderr)
            skipped.append(f"# skipped: {stem}: {exc}")
            continue
        times = []
        result = None
        for _ in range(repeats):
            start = time.perf_counter()
            result = solve(parsed.instance, config)
            times.append(time.perf_counter() - start)
        ordered = sorted(times)
        second_min = ordered[1] if len(ordered) > 1 else ordered[0]
        second_max = ordered[-2] if len(ordered) > 1 else ordered[-1]
        row = "\t".join(
            [
                stem,
                str(parsed.graph.vertex_count),
                str(parsed.graph.edge_count),
                f"{statistics.median(times):.6f}",
                f"{second_min:.6f}",
                f"{second_max:.6f}",
                result.status,
                format_number(result.weight),
            ]
        )
        lines.append(row)
        if stream is not None:
            print(row, file=stream)
    lines.extend(skipped)
    return "".join(line + "\n" for line in lines)
