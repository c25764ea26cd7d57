"""Shared test helpers: graph builders, random instances, independent oracles."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from gmwcs import Instance, Subgraph, WeightedGraph, total_weight
from gmwcs.generate import generate_instance


def build_graph(vertex_weights, edges):
    """Graph from {vid: weight} and [(u, v, weight), ...]; edge ids in order."""
    g = WeightedGraph()
    for v, w in vertex_weights.items():
        g.add_vertex(v, w)
    for u, v, w in edges:
        g.add_edge(u, v, w)
    return g


def random_instance(seed, n_range=(4, 12), density=0.4, weights=(-5.0, 5.0), rooted=None):
    """Seeded random connected instance; rooted=None draws rootedness at random."""
    rng = random.Random(seed)
    n = rng.randint(*n_range)
    parsed = generate_instance(n, density, weights, seed)
    graph = parsed.instance.graph
    if rooted is None:
        rooted = rng.random() < 0.5
    root = rng.choice(graph.vertices()) if rooted else None
    return Instance(graph, root)


def graphs_equal(a: WeightedGraph, b: WeightedGraph) -> bool:
    if sorted(a.vertices()) != sorted(b.vertices()):
        return False
    if any(a.vertex_weight(v) != b.vertex_weight(v) for v in a.vertices()):
        return False
    if sorted(a.edge_ids()) != sorted(b.edge_ids()):
        return False
    for e in a.edge_ids():
        if set(a.endpoints(e)) != set(b.endpoints(e)):
            return False
        if a.edge_weight(e) != b.edge_weight(e):
            return False
    return True


def grown_connected_vertex_sets(graph):
    """All connected vertex sets, enumerated by growth from each start vertex.

    Each set is produced exactly once: sets are anchored at their smallest
    vertex and grown by repeatedly picking a neighbour that is neither banned
    nor already inside.
    """
    verts = graph.vertices()

    def neighbours(v):
        return {graph.other_endpoint(e, v) for e in graph.incident_edges(v)}

    def grow(current, frontier, banned):
        yield frozenset(current)
        frontier = [v for v in frontier if v not in banned]
        local_banned = set(banned)
        for v in sorted(frontier):
            new_frontier = set(frontier) | neighbours(v)
            new_frontier -= current | {v} | local_banned
            yield from grow(current | {v}, new_frontier, set(local_banned))
            local_banned.add(v)

    for i, start in enumerate(verts):
        banned = set(verts[:i])
        frontier = neighbours(start) - banned
        yield from grow({start}, frontier, banned)


def second_oracle(instance: Instance, allow_empty: bool = True):
    """Independent optimum: growth-enumerated vertex sets, exhaustive edge
    subsets.  Only usable on small sparse graphs."""
    graph = instance.graph
    best_weight = 0.0 if (allow_empty and not instance.rooted) else float("-inf")
    best = Subgraph.empty(graph) if (allow_empty and not instance.rooted) else None
    for vertex_set in grown_connected_vertex_sets(graph):
        if instance.rooted and instance.root not in vertex_set:
            continue
        induced = [
            e for e in graph.edge_ids() if set(graph.endpoints(e)) <= vertex_set
        ]
        for k in range(len(induced) + 1):
            for subset in combinations(induced, k):
                candidate = Subgraph(graph, vertex_set, frozenset(subset))
                from gmwcs import is_connected

                if not is_connected(candidate):
                    continue
                weight = total_weight(candidate)
                if weight > best_weight:
                    best_weight, best = weight, candidate
    if best is None:
        raise ValueError("no feasible solution")
    return best, best_weight


def assert_valid_connected(solution: Subgraph):
    from gmwcs import is_connected

    assert is_connected(solution)


@pytest.fixture
def triangle_graph():
    # The contraction showcase: a(1), b(1), c(0); ab=5, bc=2, ac=-1.
    return build_graph({0: 1.0, 1: 1.0, 2: 0.0}, [(0, 1, 5.0), (1, 2, 2.0), (0, 2, -1.0)])
