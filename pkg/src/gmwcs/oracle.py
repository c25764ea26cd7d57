"""Brute-force ground truth for small instances.

``brute_force`` enumerates all vertex subsets and completes each with the
best edge set; ``enumerate_feasible`` lists the integer-feasible points of a
model.  Both are deliberately simple and guarded by hard size limits.

Why the edge completion is optimal: every positive induced edge can be added
to any edge set without losing validity and never decreases the weight, so
some optimal completion contains all of them.  What remains is to connect the
resulting components as cheaply as possible using the non-positive induced
edges; any connecting edge set contains a spanning tree of the condensed
multigraph and dropping its non-tree edges never decreases the weight, so a
maximum-weight spanning tree of the condensed multigraph is optimal.
"""

from __future__ import annotations

from itertools import product

from .formulation import (
    Assignment,
    MipModel,
    d_name,
    r_name,
    w_name,
    x_name,
    y_name,
)
from .graph import Instance, Subgraph, WeightedGraph, total_weight
from .results import OPTIMAL, SolveResult

BRUTE_FORCE_LIMIT = 15
ENUMERATION_LIMIT = 5


def best_edges_for_vertex_set(graph: WeightedGraph, vertex_set) -> frozenset[int] | None:
    """Max-weight edge set connecting ``vertex_set``, or None if impossible."""
    members = sorted(vertex_set)
    if not members:
        raise ValueError("vertex set must be non-empty")
    index = {v: i for i, v in enumerate(members)}
    parent = list(range(len(members)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    chosen: list[int] = []
    negatives: list[tuple[float, int, int, int]] = []
    component_count = len(members)
    for e in graph.edge_ids():
        u, v = graph.endpoints(e)
        if u not in index or v not in index:
            continue
        weight = graph.edge_weight(e)
        if weight > 0:
            chosen.append(e)
            ru, rv = find(index[u]), find(index[v])
            if ru != rv:
                parent[ru] = rv
                component_count -= 1
        else:
            negatives.append((weight, e, index[u], index[v]))
    if component_count > 1:
        negatives.sort(key=lambda t: (-t[0], t[1]))
        for weight, e, iu, iv in negatives:
            ru, rv = find(iu), find(iv)
            if ru != rv:
                parent[ru] = rv
                component_count -= 1
                chosen.append(e)
                if component_count == 1:
                    break
        if component_count > 1:
            return None
    return frozenset(chosen)


def brute_force(instance: Instance, allow_empty: bool = True) -> SolveResult:
    """Exhaustive optimum over all vertex subsets; |V| <= 15 enforced."""
    graph = instance.graph
    verts = graph.vertices()
    n = len(verts)
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")
    position = {v: i for i, v in enumerate(verts)}
    vertex_weights = [graph.vertex_weight(v) for v in verts]
    edges = []
    for e in graph.edge_ids():
        u, v = graph.endpoints(e)
        iu, iv = position[u], position[v]
        edges.append((e, iu, iv, graph.edge_weight(e), (1 << iu) | (1 << iv)))
    root_mask = 0
    if instance.rooted:
        root_mask = 1 << position[instance.root]

    best: tuple[float, int, tuple[int, ...]] | None = None
    if not instance.rooted and allow_empty:
        best = (0.0, 0, ())

    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for mask in range(1, 1 << n):
        if root_mask and not mask & root_mask:
            continue
        members = [i for i in range(n) if mask >> i & 1]
        total = 0.0
        for i in members:
            parent[i] = i
            total += vertex_weights[i]
        components = len(members)
        chosen: list[int] = []
        negatives: list[tuple[float, int, int, int]] = []
        for e, iu, iv, weight, em in edges:
            if em & mask == em:
                if weight > 0:
                    total += weight
                    chosen.append(e)
                    ru, rv = find(iu), find(iv)
                    if ru != rv:
                        parent[ru] = rv
                        components -= 1
                else:
                    negatives.append((weight, e, iu, iv))
        if components > 1:
            negatives.sort(key=lambda t: (-t[0], t[1]))
            for weight, e, iu, iv in negatives:
                ru, rv = find(iu), find(iv)
                if ru != rv:
                    parent[ru] = rv
                    components -= 1
                    total += weight
                    chosen.append(e)
                    if components == 1:
                        break
            if components > 1:
                continue
        if best is None or total > best[0]:
            best = (total, mask, tuple(chosen))

    if best is None:
        raise ValueError("no feasible solution (empty graph with empty solutions disallowed)")
    _, mask, chosen = best
    solution = Subgraph(
        graph,
        frozenset(verts[i] for i in range(n) if mask >> i & 1),
        frozenset(chosen),
    )
    weight = total_weight(solution)
    return SolveResult(solution, weight, weight, OPTIMAL)


def enumerate_feasible(
    model: MipModel, max_vertices: int = ENUMERATION_LIMIT
) -> list[tuple[Assignment, float]]:
    """All integer-feasible points of the model, with objective values.

    Enumeration is structural: vertex sets, edge subsets of the induced
    edges, a root, and one in-arc per selected non-root vertex; depths are
    forced along arcs.  Unselected vertices get the canonical depth n (their
    depth is otherwise a free coordinate in [1, n]), so exactly one
    representative per depth-equivalence class is produced.
    """
    graph = model.graph
    n = model.n
    if n > max_vertices:
        raise ValueError(f"feasible-point enumeration is limited to {max_vertices} vertices")
    verts = graph.vertices()
    eids = graph.edge_ids()
    objective = dict(model.objective)
    order_key = {v: (graph.vertex_weight(v), v) for v in verts}

    results: list[tuple[Assignment, float]] = []

    def base_assignment() -> Assignment:
        a: Assignment = {}
        for v in verts:
            a[y_name(v)] = 0.0
            a[r_name(v)] = 0.0
            a[d_name(v)] = float(n)
        for e in eids:
            u, v = graph.endpoints(e)
            a[w_name(e)] = 0.0
            a[x_name(u, v)] = 0.0
            a[x_name(v, u)] = 0.0
        return a

    def emit(assignment: Assignment) -> None:
        value = sum(objective[name] * assignment[name] for name in objective)
        results.append((assignment, value))

    if not model.rooted:
        emit(base_assignment())  # the empty selection

    for ymask in range(1, 1 << n):
        selected = [verts[i] for i in range(n) if ymask >> i & 1]
        selected_set = set(selected)
        if model.rooted and model.root not in selected_set:
            continue
        induced = [e for e in eids if set(graph.endpoints(e)) <= selected_set]
        if model.rooted:
            roots = [model.root]
        elif model.options.symmetry_breaking:
            roots = [max(selected, key=order_key.get)]
        else:
            roots = selected
        for wmask in range(1 << len(induced)):
            chosen = [induced[i] for i in range(len(induced)) if wmask >> i & 1]
            adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in selected}
            for e in chosen:
                u, v = graph.endpoints(e)
                adjacency[u].append((v, e))
                adjacency[v].append((u, e))
            if model.options.bfs_restriction:
                bfs_edges = [graph.endpoints(e) for e in chosen]
            for root in roots:
                others = [v for v in selected if v != root]
                choice_lists = [adjacency[v] for v in others]
                if any(not choices for choices in choice_lists):
                    continue
                for combo in product(*choice_lists):
                    parent_of = dict(zip(others, (u for u, _ in combo)))
                    depth = {root: 1}
                    pending = list(others)
                    while pending:
                        progressed = False
                        remaining = []
                        for v in pending:
                            p = parent_of[v]
                            if p in depth:
                                depth[v] = depth[p] + 1
                                progressed = True
                            else:
                                remaining.append(v)
                        pending = remaining
                        if not progressed:
                            break
                    if pending:  # parent arcs contain a cycle
                        continue
                    if model.options.bfs_restriction and any(
                        abs(depth[a] - depth[b]) > 1 for a, b in bfs_edges
                    ):
                        continue
                    assignment = base_assignment()
                    for v in selected:
                        assignment[y_name(v)] = 1.0
                        assignment[d_name(v)] = float(depth[v])
                    assignment[r_name(root)] = 1.0
                    for e in chosen:
                        assignment[w_name(e)] = 1.0
                    for v, (u, _) in zip(others, combo):
                        assignment[x_name(u, v)] = 1.0
                    emit(assignment)
    return results
