"""Instance files: a nodes table and an edges table, tab-separated.

Nodes: ``<id><TAB><weight>``.  Edges: ``<id1><TAB><id2><TAB><weight>``.
Lines starting with ``#`` and blank lines are ignored.  Ids are arbitrary
whitespace-free tokens; they are mapped to dense internal integers in file
order, which also fixes every tie-break downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .formulation import format_number
from .graph import Instance, Subgraph, WeightedGraph


class ParseError(ValueError):
    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no


@dataclass(frozen=True)
class ParsedInstance:
    instance: Instance
    labels: dict[int, str]

    @property
    def graph(self) -> WeightedGraph:
        return self.instance.graph

    def label(self, vertex: int) -> str:
        return self.labels[vertex]


def _data_lines(path):
    text = Path(path).read_text()
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield line_no, line.rstrip("\n")


def _parse_weight(path, line_no, token: str) -> float:
    try:
        weight = float(token)
    except ValueError:
        raise ParseError(path, line_no, f"bad weight {token!r}") from None
    if not math.isfinite(weight):
        raise ParseError(path, line_no, f"weight must be finite, got {token!r}")
    return weight


def _check_token(path, line_no, token: str) -> str:
    if not token or any(ch.isspace() for ch in token):
        raise ParseError(path, line_no, f"bad id token {token!r}")
    return token


def parse_instance(nodes_path, edges_path, root: str | None = None) -> ParsedInstance:
    """Read an instance; raises ParseError with the offending line number."""
    graph = WeightedGraph()
    ids: dict[str, int] = {}
    labels: dict[int, str] = {}
    for line_no, line in _data_lines(nodes_path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(nodes_path, line_no, f"expected '<id>\\t<weight>', got {line!r}")
        token = _check_token(nodes_path, line_no, fields[0].strip())
        weight = _parse_weight(nodes_path, line_no, fields[1].strip())
        if token in ids:
            raise ParseError(nodes_path, line_no, f"duplicate node id {token!r}")
        vid = len(ids)
        ids[token] = vid
        labels[vid] = token
        graph.add_vertex(vid, weight)
    for line_no, line in _data_lines(edges_path):
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                edges_path, line_no, f"expected '<id1>\\t<id2>\\t<weight>', got {line!r}"
            )
        t1 = _check_token(edges_path, line_no, fields[0].strip())
        t2 = _check_token(edges_path, line_no, fields[1].strip())
        weight = _parse_weight(edges_path, line_no, fields[2].strip())
        for token in (t1, t2):
            if token not in ids:
                raise ParseError(edges_path, line_no, f"unknown node id {token!r}")
        if t1 == t2:
            raise ParseError(edges_path, line_no, f"self-loop on {t1!r}")
        graph.add_edge(ids[t1], ids[t2], weight)
    root_id = None
    if root is not None:
        if root not in ids:
            raise ParseError(nodes_path, 0, f"unknown root id {root!r}")
        root_id = ids[root]
    return ParsedInstance(Instance(graph, root_id), labels)


def write_instance(parsed: ParsedInstance, nodes_path, edges_path) -> None:
    """Emit the canonical text form (the parse/print round-trip fixpoint)."""
    graph = parsed.graph
    node_lines = [
        f"{parsed.label(v)}\t{format_number(graph.vertex_weight(v))}" for v in graph.vertices()
    ]
    edge_lines = []
    for e in graph.edge_ids():
        u, v = graph.endpoints(e)
        edge_lines.append(
            f"{parsed.label(u)}\t{parsed.label(v)}\t{format_number(graph.edge_weight(e))}"
        )
    Path(nodes_path).write_text("".join(line + "\n" for line in node_lines))
    Path(edges_path).write_text("".join(line + "\n" for line in edge_lines))


def format_solution(result, parsed: ParsedInstance) -> str:
    """The CLI answer block: weight, status, bound, then node and edge lists."""
    lines = [
        f"weight {format_number(result.weight)}",
        f"status {result.status}",
        f"bound {format_number(result.upper_bound)}",
        "nodes",
    ]
    solution: Subgraph = result.solution
    for v in sorted(solution.vertices):
        lines.append(parsed.label(v))
    lines.append("edges")
    for e in sorted(solution.edges):
        u, v = parsed.graph.endpoints(e)
        lines.append(f"{parsed.label(u)} {parsed.label(v)}")
    return "".join(line + "\n" for line in lines)
