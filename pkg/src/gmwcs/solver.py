"""Top-level solve pipeline: component split, preprocessing, decomposition,
then the configured engine; plus the cutting-plane loop over a backend.

Reported weights are always recomputed on the graph the caller handed in, so
two pipelines that find the same subgraph report bit-identical weights.
"""

from __future__ import annotations

import time

from .bnb import branch_and_bound
from .decomposition import solve_decomposed
from .formulation import (
    ModelOptions,
    build_model,
    check_assignment,
    w_name,
    y_name,
)
from .graph import (
    Instance,
    Subgraph,
    connected_components,
    is_connected,
    total_weight,
)
from .reductions import lift, preprocess
from .results import (
    ENGINE_BACKEND_CUT_LOOP,
    ENGINE_BRANCH_AND_BOUND,
    OPTIMAL,
    SolveConfig,
    SolveResult,
)
from .separation import DEFAULT_TOLERANCE, find_violated_cuts

# Safety valve for cut loops driven by misbehaving fractional backends.
MAX_SEPARATION_ROUNDS = 200


def solve(instance: Instance, config: SolveConfig = SolveConfig()) -> SolveResult:
    """Solve a GMWCS / R-GMWCS instance exactly.

    The graph may be disconnected when unrooted; rooted instances are
    restricted to the root's component.  The empty subgraph (weight 0)
    competes in unrooted instances unless disabled.
    """
    deadline = None
    if config.time_limit is not None:
        deadline = time.monotonic() + config.time_limit
    if config.engine == ENGINE_BACKEND_CUT_LOOP:
        if not instance.rooted:
            raise ValueError("the backend_cut_loop engine requires a rooted instance")
        if config.backend is None:
            raise ValueError("the backend_cut_loop engine requires a configured backend")
    return _solve(instance, config, deadline)


def _solve(instance: Instance, config: SolveConfig, deadline: float | None) -> SolveResult:
    graph = instance.graph
    if instance.rooted:
        for comp in connected_components(graph):
            if instance.root in comp:
                result = _solve_component(Instance(comp, instance.root), config, deadline)
                return _reparent(result, graph)
        raise AssertionError("unreachable: Instance validates the root")

    components = connected_components(graph)
    if not components:
        return SolveResult(Subgraph.empty(graph), 0.0, 0.0, OPTIMAL)
    best: SolveResult | None = None
    if config.allow_empty_solution:
        best = SolveResult(Subgraph.empty(graph), 0.0, 0.0, OPTIMAL)
    statuses = []
    upper = 0.0 if config.allow_empty_solution else float("-inf")
    for comp in components:
        result = _reparent(_solve_component(Instance(comp, None), config, deadline), graph)
        statuses.append(result.status)
        upper = max(upper, result.upper_bound)
        if best is None or result.weight > best.weight:
            best = result
    status = OPTIMAL if all(s == OPTIMAL for s in statuses) else next(
        s for s in statuses if s != OPTIMAL
    )
    if status == OPTIMAL:
        upper = best.weight
    return SolveResult(best.solution, best.weight, max(upper, best.weight), status)


def _reparent(result: SolveResult, graph) -> SolveResult:
    solution = Subgraph(graph, result.solution.vertices, result.solution.edges)
    return SolveResult(solution, result.weight, result.upper_bound, result.status)


def _solve_component(instance: Instance, config: SolveConfig, deadline: float | None) -> SolveResult:
    graph = instance.graph
    if config.preprocess:
        reduced, trace = preprocess(instance)
    else:
        reduced, trace = instance, None

    core = _solve_reduced(reduced, config, deadline)
    solution = lift(trace, core.solution) if trace is not None else core.solution
    weight = total_weight(solution)
    upper = core.upper_bound
    status = core.status

    if not config.allow_empty_solution and graph.vertex_count:
        # Chain merging can consume a negative vertex that is nevertheless the
        # best nonempty solution; the best original single vertex covers that.
        best_vertex = max(graph.vertices(), key=lambda v: (graph.vertex_weight(v), -v))
        single = Subgraph(graph, frozenset([best_vertex]), frozenset())
        single_weight = total_weight(single)
        upper = max(upper, single_weight)
        if single_weight > weight:
            solution, weight = single, single_weight
    if status == OPTIMAL:
        upper = weight
    return SolveResult(solution, weight, max(upper, weight), status)


def _solve_reduced(instance: Instance, config: SolveConfig, deadline: float | None) -> SolveResult:
    if not instance.rooted and config.decompose:
        return solve_decomposed(
            instance,
            base_solve=lambda sub: _engine(sub, config, deadline),
            full_solve=lambda sub: _solve(sub, config, deadline),
        )
    return _engine(instance, config, deadline)


def _engine(instance: Instance, config: SolveConfig, deadline: float | None) -> SolveResult:
    if config.engine == ENGINE_BRANCH_AND_BOUND:
        return branch_and_bound(instance, config, deadline)
    if config.engine == ENGINE_BACKEND_CUT_LOOP:
        return backend_cut_loop(instance, config.backend, config, deadline)
    raise ValueError(f"unknown engine {config.engine!r}")


def backend_cut_loop(
    instance: Instance,
    backend,
    config: SolveConfig = SolveConfig(),
    deadline: float | None = None,
) -> SolveResult:
    """Cutting-plane loop: solve the relaxation, separate violated root-vertex
    cuts at the fractional point, add them, repeat until none are violated.

    With an integral backend the final point is decoded and verified; with a
    fractional one the loop only yields a bound and branch-and-bound supplies
    the primal side.
    """
    if not instance.rooted:
        raise ValueError("the cut loop requires a rooted instance (cuts need a root)")
    if backend is None:
        raise ValueError("no relaxation backend configured")
    graph = instance.graph
    options = ModelOptions(
        symmetry_breaking=config.symmetry_breaking,
        bfs_restriction=config.bfs_restriction,
    )
    model = build_model(instance, options)
    objective = float("inf")
    values = None
    for _ in range(MAX_SEPARATION_ROUNDS):
        objective, values = backend.solve(model)
        w_values = {e: values[w_name(e)] for e in graph.edge_ids()}
        y_values = {v: values[y_name(v)] for v in graph.vertices()}
        cuts = find_violated_cuts(graph, instance.root, w_values, y_values, DEFAULT_TOLERANCE)
        if not cuts:
            break
        model = model.with_extra_constraints(
            [
                (
                    [(y_name(cut.target), 1)] + [(w_name(e), -1) for e in sorted(cut.edges)],
                    "<=",
                    0,
                    "root_cut",
                )
                for cut in cuts
            ]
        )

    if getattr(backend, "integral", False):
        from .backends import BackendError

        if check_assignment(model, values):
            raise BackendError("integral backend returned an infeasible point")
        solution = Subgraph(
            graph,
            frozenset(v for v in graph.vertices() if values[y_name(v)] > 0.5),
            frozenset(e for e in graph.edge_ids() if values[w_name(e)] > 0.5),
        )
        if not is_connected(solution) or instance.root not in solution.vertices:
            raise BackendError("integral backend returned a non-certifying point")
        weight = total_weight(solution)
        return SolveResult(solution, weight, weight, OPTIMAL)

    primal = branch_and_bound(instance, config, deadline)
    upper = max(min(primal.upper_bound, objective), primal.weight)
    if primal.status == OPTIMAL:
        upper = primal.weight
    return SolveResult(primal.solution, primal.weight, upper, primal.status)
