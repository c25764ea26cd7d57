"""Cut-vertex decomposition: split an unrooted instance around the largest
biconnected component into three smaller solves and recombine exactly.

The scheme: (1) merge all cut vertices of the largest biconnected component B
into a single zero-weight root and solve that rooted instance over the union
of the hanging branches; (2) solve B itself with one pendant vertex per cut
vertex summarizing the optimal rooted branch extension; (3) solve the branch
union unrooted for solutions that avoid B entirely.  The answer is the best
of (2) and (3).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .graph import (
    Instance,
    Subgraph,
    WeightedGraph,
    biconnected_decomposition,
    component_vertex_set,
    connected_components,
    graph_is_connected,
    total_weight,
)
from .results import OPTIMAL, SolveResult


@dataclass(frozen=True)
class DecompositionPlan:
    core_vertices: frozenset[int]
    core_edges: frozenset[int]
    cut_vertices: frozenset[int]
    branches: dict[int, frozenset[int]]
    branch_edges: dict[int, frozenset[int]]
    merged_branch_instance: Instance
    merged_root: int
    residual_instance: Instance


def plan(instance: Instance) -> DecompositionPlan | None:
    """Build the decomposition plan, or None when splitting gains nothing.

    Branches are the components left after deleting the core's non-cut
    vertices and all of the core's edges; deleting the edges as well keeps
    branches attached to exactly one cut vertex each (a core edge joining two
    cut vertices stays core business and must not bridge two branches).
    """
    if instance.rooted:
        raise ValueError("decomposition applies to unrooted instances only")
    graph = instance.graph
    if not graph_is_connected(graph):
        raise ValueError("decomposition requires a connected graph")
    components, cuts = biconnected_decomposition(graph)
    if len(components) <= 1:
        return None
    vertex_sets = [component_vertex_set(graph, comp) for comp in components]
    best = max(range(len(components)), key=lambda i: (len(vertex_sets[i]), -min(vertex_sets[i])))
    core_vertices = vertex_sets[best]
    core_edges = components[best]
    cut_in_core = frozenset(cuts & core_vertices)
    if not cut_in_core:
        return None

    work = graph.copy()
    for e in core_edges:
        work.remove_edge(e)
    for v in core_vertices - cut_in_core:
        work.remove_vertex(v)

    branches: dict[int, frozenset[int]] = {}
    branch_edges: dict[int, frozenset[int]] = {}
    for piece in connected_components(work):
        piece_vertices = frozenset(piece.vertices())
        owners = piece_vertices & cut_in_core
        if len(owners) != 1:
            raise AssertionError(f"branch must contain exactly one cut vertex, got {owners}")
        (c,) = owners
        branches[c] = piece_vertices
        branch_edges[c] = frozenset(piece.edge_ids())

    merged = WeightedGraph()
    merged_root = graph.fresh_vertex_id()
    merged.add_vertex(merged_root, 0.0)
    for c in sorted(cut_in_core):
        for v in sorted(branches[c] - {c}):
            merged.add_vertex(v, graph.vertex_weight(v))
        for e in sorted(branch_edges[c]):
            u, v = graph.endpoints(e)
            u = merged_root if u == c else u
            v = merged_root if v == c else v
            merged.add_edge(u, v, graph.edge_weight(e), edge_id=e)

    return DecompositionPlan(
        core_vertices=core_vertices,
        core_edges=core_edges,
        cut_vertices=cut_in_core,
        branches=branches,
        branch_edges=branch_edges,
        merged_branch_instance=Instance(merged, merged_root),
        merged_root=merged_root,
        residual_instance=Instance(work, None),
    )


def solve_decomposed(
    instance: Instance,
    base_solve: Callable[[Instance], SolveResult],
    full_solve: Callable[[Instance], SolveResult] | None = None,
) -> SolveResult:
    """Run the three-step scheme; ``base_solve`` handles steps 1 and 2 and
    ``full_solve`` (default: ``base_solve``) recurses on the branch union."""
    decomposition = plan(instance)
    if decomposition is None:
        return base_solve(instance)
    if full_solve is None:
        full_solve = base_solve
    graph = instance.graph

    # Step 1: optimal rooted extension of every branch, via one merged solve.
    step1 = base_solve(decomposition.merged_branch_instance)
    branch_solutions: dict[int, Subgraph] = {}
    for c in sorted(decomposition.cut_vertices):
        verts = {v for v in step1.solution.vertices if v in decomposition.branches[c]}
        verts.add(c)
        edges = frozenset(e for e in step1.solution.edges if e in decomposition.branch_edges[c])
        branch_solutions[c] = Subgraph(graph, frozenset(verts), edges)

    # Step 2: the core with one pendant per cut vertex.  The pendant carries
    # the full rooted branch weight and its edge carries -w(c), so selecting
    # pendant+edge+c adds exactly the branch extension's weight and the
    # objective of every feasible point equals the weight of its expansion.
    core = WeightedGraph()
    for v in sorted(decomposition.core_vertices):
        core.add_vertex(v, graph.vertex_weight(v))
    for e in sorted(decomposition.core_edges):
        u, v = graph.endpoints(e)
        core.add_edge(u, v, graph.edge_weight(e), edge_id=e)
    pendant_of: dict[int, int] = {}
    next_vertex = graph.fresh_vertex_id()
    next_edge = graph.fresh_edge_id()
    for c in sorted(decomposition.cut_vertices):
        pendant = next_vertex
        next_vertex += 1
        core.add_vertex(pendant, total_weight(branch_solutions[c]))
        core.add_edge(c, pendant, -graph.vertex_weight(c), edge_id=next_edge)
        next_edge += 1
        pendant_of[c] = pendant
    step2 = base_solve(Instance(core, None))
    step2_vertices = {v for v in step2.solution.vertices if v in decomposition.core_vertices}
    step2_edges = {e for e in step2.solution.edges if e in decomposition.core_edges}
    for c in sorted(decomposition.cut_vertices):
        if pendant_of[c] in step2.solution.vertices:
            step2_vertices |= branch_solutions[c].vertices
            step2_edges |= branch_solutions[c].edges
    candidate2 = Subgraph(graph, frozenset(step2_vertices), frozenset(step2_edges))
    weight2 = total_weight(candidate2)

    # Step 3: solutions lying entirely inside one branch.
    step3 = full_solve(decomposition.residual_instance)
    candidate3 = Subgraph(graph, step3.solution.vertices, step3.solution.edges)
    weight3 = total_weight(candidate3)

    if weight2 >= weight3:
        best, weight = candidate2, weight2
    else:
        best, weight = candidate3, weight3
    statuses = (step1.status, step2.status, step3.status)
    if all(s == OPTIMAL for s in statuses):
        return SolveResult(best, weight, weight, OPTIMAL)
    # Step 2's bound is only as good as step 1's pendant weights; the merged
    # solve's remaining gap bounds how much all pendants together understate.
    slack = max(0.0, step1.upper_bound - step1.weight)
    upper = max(step2.upper_bound + slack, step3.upper_bound, weight)
    status = next(s for s in statuses if s != OPTIMAL)
    return SolveResult(best, weight, upper, status)
