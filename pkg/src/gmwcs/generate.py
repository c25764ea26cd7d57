"""Seeded random instance generation in the instance-file format."""

from __future__ import annotations

import random

from .graph import Instance, WeightedGraph
from .instance_io import ParsedInstance


def generate_instance(
    n: int, density: float, weight_range: tuple[float, float], seed: int
) -> ParsedInstance:
    """Erdos-Renyi draw augmented to connectedness by random cross-component
    edges; all weights uniform in ``weight_range``.  Deterministic per seed."""
    if n < 1:
        raise ValueError("need at least one node")
    if not 0 <= density <= 1:
        raise ValueError("density must be in [0, 1]")
    lo, hi = weight_range
    if lo > hi:
        raise ValueError(f"empty weight range [{lo}, {hi}]")
    rng = random.Random(seed)
    graph = WeightedGraph()
    for v in range(n):
        graph.add_vertex(v, rng.uniform(lo, hi))
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    components = n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                graph.add_edge(u, v, rng.uniform(lo, hi))
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    components -= 1
    while components > 1:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if find(u) == find(v):
            continue
        graph.add_edge(u, v, rng.uniform(lo, hi))
        parent[find(u)] = find(v)
        components -= 1
    labels = {v: str(v) for v in range(n)}
    return ParsedInstance(Instance(graph, None), labels)
