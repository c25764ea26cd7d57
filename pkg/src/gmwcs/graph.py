"""Weighted undirected multigraph and the structural algorithms on top of it.

Vertices and edges are identified by integers.  Edge ids are assigned in
insertion order, which makes every traversal in this package deterministic:
wherever order matters we iterate ids in sorted order.

Graphs should be treated as immutable once shared; the preprocessing code
works on private copies.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass


class WeightedGraph:
    """Undirected multigraph with real weights on vertices and edges.

    Self-loops are rejected.  Parallel edges are allowed: they occur in raw
    input files and transiently while edges are being contracted.
    """

    def __init__(self) -> None:
        self._vertex_weight: dict[int, float] = {}
        self._edges: dict[int, tuple[int, int, float]] = {}
        self._incident: dict[int, set[int]] = {}
        self._next_vertex_id = 0
        self._next_edge_id = 0

    # -- construction -----------------------------------------------------

    def add_vertex(self, vertex: int, weight: float) -> int:
        if vertex in self._vertex_weight:
            raise ValueError(f"duplicate vertex id {vertex}")
        _check_finite(weight)
        self._vertex_weight[vertex] = float(weight)
        self._incident[vertex] = set()
        if vertex >= self._next_vertex_id:
            self._next_vertex_id = vertex + 1
        return vertex

    def add_edge(self, u: int, v: int, weight: float, edge_id: int | None = None) -> int:
        if u == v:
            raise ValueError(f"self-loop on vertex {u} is not allowed")
        if u not in self._vertex_weight or v not in self._vertex_weight:
            raise ValueError(f"edge ({u}, {v}) references a missing vertex")
        _check_finite(weight)
        if edge_id is None:
            edge_id = self._next_edge_id
        elif edge_id in self._edges:
            raise ValueError(f"duplicate edge id {edge_id}")
        self._edges[edge_id] = (u, v, float(weight))
        self._incident[u].add(edge_id)
        self._incident[v].add(edge_id)
        if edge_id >= self._next_edge_id:
            self._next_edge_id = edge_id + 1
        return edge_id

    def fresh_vertex_id(self) -> int:
        """An id never used by this graph, including removed vertices."""
        return self._next_vertex_id

    def fresh_edge_id(self) -> int:
        return self._next_edge_id

    # -- mutation (used by preprocessing only) -----------------------------

    def remove_edge(self, edge_id: int) -> None:
        u, v, _ = self._edges.pop(edge_id)
        self._incident[u].discard(edge_id)
        self._incident[v].discard(edge_id)

    def remove_vertex(self, vertex: int) -> None:
        for edge_id in list(self._incident[vertex]):
            self.remove_edge(edge_id)
        del self._incident[vertex]
        del self._vertex_weight[vertex]

    def rewire_edge(self, edge_id: int, old: int, new: int) -> None:
        """Move one endpoint of an edge from ``old`` to ``new``."""
        u, v, w = self._edges[edge_id]
        if old == u:
            u = new
        elif old == v:
            v = new
        else:
            raise ValueError(f"vertex {old} is not an endpoint of edge {edge_id}")
        if u == v:
            raise ValueError(f"rewiring edge {edge_id} would create a self-loop")
        self._edges[edge_id] = (u, v, w)
        self._incident[old].discard(edge_id)
        self._incident[new].add(edge_id)

    def set_edge_weight(self, edge_id: int, weight: float) -> None:
        _check_finite(weight)
        u, v, _ = self._edges[edge_id]
        self._edges[edge_id] = (u, v, float(weight))

    # -- queries -----------------------------------------------------------

    def __contains__(self, vertex: int) -> bool:
        return vertex in self._vertex_weight

    @property
    def vertex_count(self) -> int:
        return len(self._vertex_weight)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def vertices(self) -> list[int]:
        return sorted(self._vertex_weight)

    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def has_edge(self, edge_id: int) -> bool:
        return edge_id in self._edges

    def vertex_weight(self, vertex: int) -> float:
        return self._vertex_weight[vertex]

    def edge_weight(self, edge_id: int) -> float:
        return self._edges[edge_id][2]

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        u, v, _ = self._edges[edge_id]
        return u, v

    def incident_edges(self, vertex: int) -> list[int]:
        return sorted(self._incident[vertex])

    def degree(self, vertex: int) -> int:
        return len(self._incident[vertex])

    def other_endpoint(self, edge_id: int, vertex: int) -> int:
        u, v, _ = self._edges[edge_id]
        if vertex == u:
            return v
        if vertex == v:
            return u
        raise ValueError(f"vertex {vertex} is not an endpoint of edge {edge_id}")

    def edges_between(self, u: int, v: int) -> list[int]:
        pair = {u, v}
        return sorted(e for e in self._incident[u] if set(self.endpoints(e)) == pair)

    def has_parallel_edges(self) -> bool:
        seen = set()
        for edge_id in self._edges:
            key = frozenset(self.endpoints(edge_id))
            if key in seen:
                return True
            seen.add(key)
        return False

    def copy(self) -> WeightedGraph:
        g = WeightedGraph()
        g._vertex_weight = dict(self._vertex_weight)
        g._edges = dict(self._edges)
        g._incident = {v: set(s) for v, s in self._incident.items()}
        g._next_vertex_id = self._next_vertex_id
        g._next_edge_id = self._next_edge_id
        return g


def _check_finite(weight: float) -> None:
    if not math.isfinite(weight):
        raise ValueError(f"weight must be a finite real, got {weight!r}")


@dataclass(frozen=True)
class Subgraph:
    """A vertex set plus an edge set over a parent graph.

    Every edge must have both endpoints in the vertex set; connectivity is
    not required here (use :func:`is_connected`).
    """

    parent: WeightedGraph
    vertices: frozenset[int]
    edges: frozenset[int]

    def __post_init__(self) -> None:
        for v in self.vertices:
            if v not in self.parent:
                raise ValueError(f"subgraph vertex {v} is not in the parent graph")
        for e in self.edges:
            if not self.parent.has_edge(e):
                raise ValueError(f"subgraph edge {e} is not in the parent graph")
            u, v = self.parent.endpoints(e)
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {e} has an endpoint outside the subgraph")

    @staticmethod
    def empty(parent: WeightedGraph) -> Subgraph:
        return Subgraph(parent, frozenset(), frozenset())


def subgraph_of(parent: WeightedGraph, vertices, edges=()) -> Subgraph:
    return Subgraph(parent, frozenset(vertices), frozenset(edges))


@dataclass(frozen=True)
class Instance:
    """A weighted graph plus an optional root (root present = rooted variant)."""

    graph: WeightedGraph
    root: int | None = None

    def __post_init__(self) -> None:
        if self.root is not None and self.root not in self.graph:
            raise ValueError(f"root vertex {self.root} is not in the graph")

    @property
    def rooted(self) -> bool:
        return self.root is not None


def total_weight(subgraph: Subgraph) -> float:
    """Sum of selected vertex and edge weights, in sorted-id order."""
    g = subgraph.parent
    acc = 0.0
    for v in sorted(subgraph.vertices):
        acc += g.vertex_weight(v)
    for e in sorted(subgraph.edges):
        acc += g.edge_weight(e)
    return acc


def is_connected(subgraph: Subgraph) -> bool:
    """True iff the subgraph is empty or all its vertices are joined by its edges."""
    if not subgraph.vertices:
        return True
    g = subgraph.parent
    start = next(iter(subgraph.vertices))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in g.incident_edges(v):
            if e not in subgraph.edges:
                continue
            u = g.other_endpoint(e, v)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen == subgraph.vertices


def graph_is_connected(graph: WeightedGraph) -> bool:
    verts = graph.vertices()
    if not verts:
        return True
    seen = {verts[0]}
    queue = deque([verts[0]])
    while queue:
        v = queue.popleft()
        for e in graph.incident_edges(v):
            u = graph.other_endpoint(e, v)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(verts)


def connected_components(graph: WeightedGraph) -> list[WeightedGraph]:
    """Split into maximal connected pieces, preserving ids and weights."""
    unvisited = set(graph.vertices())
    components: list[WeightedGraph] = []
    for start in graph.vertices():
        if start not in unvisited:
            continue
        comp_vertices = {start}
        queue = deque([start])
        unvisited.discard(start)
        while queue:
            v = queue.popleft()
            for e in graph.incident_edges(v):
                u = graph.other_endpoint(e, v)
                if u in unvisited:
                    unvisited.discard(u)
                    comp_vertices.add(u)
                    queue.append(u)
        comp = WeightedGraph()
        for v in sorted(comp_vertices):
            comp.add_vertex(v, graph.vertex_weight(v))
        for e in graph.edge_ids():
            u, v = graph.endpoints(e)
            if u in comp_vertices:
                comp.add_edge(u, v, graph.edge_weight(e), edge_id=e)
        comp._next_vertex_id = graph._next_vertex_id
        comp._next_edge_id = graph._next_edge_id
        components.append(comp)
    return components


def biconnected_decomposition(graph: WeightedGraph) -> tuple[list[frozenset[int]], frozenset[int]]:
    """Biconnected components (as edge-id sets) and the articulation points.

    Uses one iterative depth-first traversal; parallel edges are handled by
    tracking the tree edge id rather than the parent vertex.  Raises on a
    disconnected graph.
    """
    verts = graph.vertices()
    if not verts:
        return [], frozenset()
    if not graph_is_connected(graph):
        raise ValueError("biconnected decomposition requires a connected graph")

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut: set[int] = set()
    components: list[frozenset[int]] = []
    edge_stack: list[int] = []
    counter = 0
    root = verts[0]
    root_children = 0

    disc[root] = low[root] = counter
    counter += 1
    # frame: (vertex, tree edge id into it, iterator over incident edge ids)
    stack = [(root, -1, iter(graph.incident_edges(root)))]
    while stack:
        v, in_edge, it = stack[-1]
        advanced = False
        for e in it:
            if e == in_edge:
                continue
            u = graph.other_endpoint(e, v)
            if u not in disc:
                edge_stack.append(e)
                disc[u] = low[u] = counter
                counter += 1
                if v == root:
                    root_children += 1
                stack.append((u, e, iter(graph.incident_edges(u))))
                advanced = True
                break
            if disc[u] < disc[v]:
                edge_stack.append(e)
                low[v] = min(low[v], disc[u])
        if advanced:
            continue
        stack.pop()
        if stack:
            parent, _, _ = stack[-1]
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cut.add(parent)
                comp = set()
                while True:
                    e = edge_stack.pop()
                    comp.add(e)
                    if e == in_edge:
                        break
                components.append(frozenset(comp))
    if root_children > 1:
        cut.add(root)
    return components, frozenset(cut)


def component_vertex_set(graph: WeightedGraph, edge_set) -> frozenset[int]:
    verts = set()
    for e in edge_set:
        verts.update(graph.endpoints(e))
    return frozenset(verts)
