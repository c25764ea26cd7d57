"""Preprocessing rewrites: positive-edge contraction and negative-chain merging.

Both rules shrink the graph while preserving the optimum; the trace records
every rewrite so a solution of the reduced graph can be lifted back to the
original one with exactly the same weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Instance, Subgraph, WeightedGraph


@dataclass(frozen=True)
class EdgeContraction:
    """Edge (u, v) contracted into the fresh vertex ``new_vertex``."""

    new_vertex: int
    removed_u: int
    removed_v: int
    removed_edge: int
    new_weight: float
    # (edge id, old endpoints) for every surviving edge moved onto new_vertex
    rewired: tuple[tuple[int, int, int], ...]
    root_moved: bool = False

    def replay(self, g: WeightedGraph) -> None:
        u, v, e = self.removed_u, self.removed_v, self.removed_edge
        w = self.new_vertex
        g.add_vertex(w, self.new_weight)
        g.remove_edge(e)
        for eid, old_u, old_v in self.rewired:
            old = old_u if old_u in (u, v) else old_v
            g.rewire_edge(eid, old, w)
        g.remove_vertex(u)
        g.remove_vertex(v)

    def expand(self, vertices: set[int], edges: set[int]) -> None:
        if self.new_vertex in vertices:
            vertices.discard(self.new_vertex)
            vertices.add(self.removed_u)
            vertices.add(self.removed_v)
            edges.add(self.removed_edge)


@dataclass(frozen=True)
class ParallelMerge:
    """Non-negative parallel edges summed into ``kept_edge``."""

    kept_edge: int
    merged_edges: tuple[int, ...]
    new_weight: float

    def replay(self, g: WeightedGraph) -> None:
        for eid in self.merged_edges:
            g.remove_edge(eid)
        g.set_edge_weight(self.kept_edge, self.new_weight)

    def expand(self, vertices: set[int], edges: set[int]) -> None:
        if self.kept_edge in edges:
            edges.update(self.merged_edges)


@dataclass(frozen=True)
class ParallelDrop:
    """Parallel edges removed in favour of the maximum-weight one."""

    kept_edge: int
    dropped_edges: tuple[int, ...]

    def replay(self, g: WeightedGraph) -> None:
        for eid in self.dropped_edges:
            g.remove_edge(eid)

    def expand(self, vertices: set[int], edges: set[int]) -> None:
        pass  # dropped edges never appear in reduced-graph solutions


@dataclass(frozen=True)
class ChainReplace:
    """Degree-2 all-negative vertex replaced by a single edge (u, w)."""

    new_edge: int
    endpoints: tuple[int, int]
    removed_vertex: int
    removed_edges: tuple[int, int]
    new_weight: float

    def replay(self, g: WeightedGraph) -> None:
        u, w = self.endpoints
        g.remove_vertex(self.removed_vertex)  # also removes both chain edges
        g.add_edge(u, w, self.new_weight, edge_id=self.new_edge)

    def expand(self, vertices: set[int], edges: set[int]) -> None:
        if self.new_edge in edges:
            edges.discard(self.new_edge)
            edges.add(self.removed_edges[0])
            edges.add(self.removed_edges[1])
            vertices.add(self.removed_vertex)


@dataclass
class ReductionTrace:
    """Ordered rewrite log; replays forward on graphs, backward on solutions."""

    original: WeightedGraph | None = None
    reduced: WeightedGraph | None = None
    records: list = field(default_factory=list)

    def append(self, record) -> None:
        self.records.append(record)

    def replay(self, graph: WeightedGraph) -> WeightedGraph:
        """Apply all records forward to a copy of ``graph``."""
        g = graph.copy()
        for record in self.records:
            record.replay(g)
        return g


def _normalize_pair(g: WeightedGraph, trace: ReductionTrace, u: int, v: int) -> None:
    """Collapse parallel edges between u and v to a single edge.

    Non-negative parallels are merged into one edge carrying their sum, then
    only the maximum-weight edge among the remaining parallels is kept.
    """
    group = g.edges_between(u, v)
    if len(group) <= 1:
        return
    nonneg = [e for e in group if g.edge_weight(e) >= 0]
    if len(nonneg) >= 2:
        kept = nonneg[0]
        merged = tuple(nonneg[1:])
        new_weight = sum(g.edge_weight(e) for e in nonneg)
        for e in merged:
            g.remove_edge(e)
        g.set_edge_weight(kept, new_weight)
        trace.append(ParallelMerge(kept, merged, new_weight))
        group = [e for e in group if e == kept or e not in merged]
    if len(group) >= 2:
        kept = max(group, key=lambda e: (g.edge_weight(e), -e))
        dropped = tuple(e for e in group if e != kept)
        for e in dropped:
            g.remove_edge(e)
        trace.append(ParallelDrop(kept, dropped))


def _normalize_all_pairs(g: WeightedGraph, trace: ReductionTrace) -> None:
    seen: set[frozenset[int]] = set()
    for e in g.edge_ids():
        if not g.has_edge(e):
            continue
        pair = frozenset(g.endpoints(e))
        if pair in seen:
            continue
        seen.add(pair)
        u, v = g.endpoints(e)
        _normalize_pair(g, trace, u, v)


def apply_rule1(graph: WeightedGraph, trace: ReductionTrace, root: int | None = None) -> bool:
    """Contract one edge e=(u,v) with w(e) >= 0, w(e)+w(u) >= 0, w(e)+w(v) >= 0.

    The contracted vertex absorbs all three weights; parallel edges created by
    the contraction are normalized immediately.  Returns whether a contraction
    happened; the caller loops while the graph keeps changing.
    """
    for e in graph.edge_ids():
        u, v = graph.endpoints(e)
        we = graph.edge_weight(e)
        if we < 0 or we + graph.vertex_weight(u) < 0 or we + graph.vertex_weight(v) < 0:
            continue
        assert len(graph.edges_between(u, v)) == 1, "parallel edges must be normalized first"
        new_vertex = graph.fresh_vertex_id()
        new_weight = we + graph.vertex_weight(u) + graph.vertex_weight(v)
        rewired = []
        for side in (u, v):
            for eid in graph.incident_edges(side):
                if eid == e:
                    continue
                a, b = graph.endpoints(eid)
                rewired.append((eid, a, b))
        record = EdgeContraction(
            new_vertex=new_vertex,
            removed_u=u,
            removed_v=v,
            removed_edge=e,
            new_weight=new_weight,
            rewired=tuple(rewired),
            root_moved=root in (u, v),
        )
        record.replay(graph)
        trace.append(record)
        for t in {graph.other_endpoint(eid, new_vertex) for eid in graph.incident_edges(new_vertex)}:
            _normalize_pair(graph, trace, new_vertex, t)
        return True
    return False


def apply_rule2(graph: WeightedGraph, trace: ReductionTrace, root: int | None = None) -> bool:
    """Replace degree-2 all-negative vertices by single edges, in one pass.

    A vertex qualifies when its weight and both incident edge weights are
    negative and its two neighbours are distinct.  The root is never consumed.
    Returns whether any replacement happened.
    """
    changed = False
    for v in graph.vertices():
        if v not in graph or v == root:
            continue
        if graph.degree(v) != 2:
            continue
        e1, e2 = graph.incident_edges(v)
        u = graph.other_endpoint(e1, v)
        w = graph.other_endpoint(e2, v)
        if u == w:
            continue  # replacing would create a self-loop
        if graph.vertex_weight(v) >= 0 or graph.edge_weight(e1) >= 0 or graph.edge_weight(e2) >= 0:
            continue
        new_weight = graph.vertex_weight(v) + graph.edge_weight(e1) + graph.edge_weight(e2)
        record = ChainReplace(
            new_edge=graph.fresh_edge_id(),
            endpoints=(u, w),
            removed_vertex=v,
            removed_edges=(e1, e2),
            new_weight=new_weight,
        )
        record.replay(graph)
        trace.append(record)
        _normalize_pair(graph, trace, u, w)
        changed = True
    return changed


def preprocess(instance: Instance) -> tuple[Instance, ReductionTrace]:
    """Apply both rules to a fixpoint.

    Input parallel edges are normalized first with the same merge logic the
    contraction rule uses.  When a contraction consumes the root, the merged
    vertex becomes the new root.
    """
    g = instance.graph.copy()
    root = instance.root
    trace = ReductionTrace(original=instance.graph)
    _normalize_all_pairs(g, trace)
    while True:
        progressed = False
        while True:
            before = len(trace.records)
            if not apply_rule1(g, trace, root=root):
                break
            progressed = True
            for record in trace.records[before:]:
                if isinstance(record, EdgeContraction) and record.root_moved:
                    root = record.new_vertex
        if apply_rule2(g, trace, root=root):
            progressed = True
        if not progressed:
            break
    trace.reduced = g
    return Instance(g, root), trace


def lift(trace: ReductionTrace, solution: Subgraph) -> Subgraph:
    """Map a reduced-graph solution back to the original graph.

    Replays the trace backward: contracted vertices expand to the consumed
    (u, v, e) triple, merged edges expand to their non-negative constituents
    and chain edges expand to the consumed (e1, v, e2) path.  The total
    weight is preserved exactly.
    """
    if trace.reduced is not None:
        for v in solution.vertices:
            if v not in trace.reduced:
                raise ValueError(f"solution vertex {v} is not in the reduced graph")
        for e in solution.edges:
            if not trace.reduced.has_edge(e):
                raise ValueError(f"solution edge {e} is not in the reduced graph")
    vertices = set(solution.vertices)
    edges = set(solution.edges)
    for record in reversed(trace.records):
        record.expand(vertices, edges)
    parent = trace.original if trace.original is not None else solution.parent
    return Subgraph(parent, frozenset(vertices), frozenset(edges))
