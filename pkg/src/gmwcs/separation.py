"""Max-flow / min-cut machinery and the violated connectivity-cut finder.

A fractional relaxation point induces arc capacities from the edge variables;
for every profitable vertex the minimum root-vertex cut is the best candidate
for a violated constraint y_v <= sum of w_e over the cut.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .graph import WeightedGraph

# Residual capacities below this are treated as zero during BFS.
_RESIDUAL_EPS = 1e-12

DEFAULT_TOLERANCE = 1e-6


@dataclass
class FlowNetwork:
    """Directed arcs with non-negative capacities; antiparallel pairs allowed."""

    source: int
    sink: int
    capacity: dict[int, dict[int, float]] = field(default_factory=dict)

    def add_arc(self, u: int, v: int, cap: float) -> None:
        if cap < 0 or not math.isfinite(cap):
            raise ValueError(f"arc capacity must be finite and >= 0, got {cap!r}")
        if u == v:
            raise ValueError("self-loop arcs are not allowed")
        self.capacity.setdefault(u, {})[v] = self.capacity.get(u, {}).get(v, 0.0) + cap
        self.capacity.setdefault(v, {})

    def arcs(self):
        for u, row in self.capacity.items():
            for v, cap in row.items():
                yield u, v, cap


class MaxFlowResult(NamedTuple):
    value: float
    min_cut: frozenset[tuple[int, int]]
    source_side: frozenset[int]
    augmentations: int


def max_flow(network: FlowNetwork) -> MaxFlowResult:
    """Edmonds-Karp: BFS augmenting paths on the residual network.

    Returns the flow value, the arcs crossing from the residual source side
    (restricted to arcs with positive original capacity) and the source-side
    vertex set.  An unreachable sink yields value 0 and an empty cut.
    """
    source, sink = network.source, network.sink
    if source == sink:
        raise ValueError("source and sink must differ")
    residual: dict[int, dict[int, float]] = {u: dict(row) for u, row in network.capacity.items()}
    residual.setdefault(source, {})
    residual.setdefault(sink, {})
    for u, v, _ in network.arcs():
        residual.setdefault(v, {}).setdefault(u, 0.0)

    value = 0.0
    augmentations = 0
    while True:
        parent: dict[int, int] = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v, cap in residual[u].items():
                if v not in parent and cap > _RESIDUAL_EPS:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            break
        bottleneck = math.inf
        v = sink
        while v != source:
            u = parent[v]
            bottleneck = min(bottleneck, residual[u][v])
            v = u
        v = sink
        while v != source:
            u = parent[v]
            residual[u][v] -= bottleneck
            residual[v][u] = residual[v].get(u, 0.0) + bottleneck
            v = u
        value += bottleneck
        augmentations += 1

    side = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, cap in residual[u].items():
            if v not in side and cap > _RESIDUAL_EPS:
                side.add(v)
                queue.append(v)
    cut = frozenset(
        (u, v)
        for u, v, cap in network.arcs()
        if cap > 0 and u in side and v not in side
    )
    return MaxFlowResult(value, cut, frozenset(side), augmentations)


@dataclass(frozen=True)
class CutConstraint:
    """y_target <= sum of w_e over ``edges``; removing them cuts target from root."""

    target: int
    edges: frozenset[int]


def build_flow_network(graph: WeightedGraph, w_values, source: int, sink: int) -> FlowNetwork:
    """Each undirected edge becomes two antiparallel arcs of capacity w_e."""
    network = FlowNetwork(source, sink)
    for v in graph.vertices():
        network.capacity.setdefault(v, {})
    for e in graph.edge_ids():
        u, v = graph.endpoints(e)
        cap = w_values[e]
        network.add_arc(u, v, cap)
        network.add_arc(v, u, cap)
    return network


def find_violated_cuts(
    graph: WeightedGraph,
    root: int,
    w_values,
    y_values,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[CutConstraint]:
    """One violated minimum cut per profitable vertex, if any.

    The emitted edge set is every graph edge straddling the residual
    partition, so the constraint is valid regardless of the current
    fractional values.
    """
    if root not in graph:
        raise ValueError(f"root {root} is not in the graph")
    cuts: list[CutConstraint] = []
    for v in graph.vertices():
        if v == root:
            continue
        y_v = y_values.get(v, 0.0)
        if y_v <= tolerance:
            continue
        result = max_flow(build_flow_network(graph, w_values, root, v))
        if result.value < y_v - tolerance:
            side = result.source_side
            edges = frozenset(
                e
                for e in graph.edge_ids()
                if (graph.endpoints(e)[0] in side) != (graph.endpoints(e)[1] in side)
            )
            cuts.append(CutConstraint(v, edges))
    return cuts
