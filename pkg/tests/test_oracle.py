from itertools import combinations

import pytest

from gmwcs import (
    Instance,
    ModelOptions,
    best_edges_for_vertex_set,
    brute_force,
    build_model,
    enumerate_feasible,
    is_connected,
    total_weight,
)
from gmwcs.formulation import w_name, y_name
from gmwcs.graph import subgraph_of

from conftest import build_graph, random_instance, second_oracle


def test_best_edges_single_vertex():
    g = build_graph({0: 1.0}, [])
    assert best_edges_for_vertex_set(g, {0}) == frozenset()


def test_best_edges_all_positive_triangle():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    assert best_edges_for_vertex_set(g, {0, 1, 2}) == frozenset({0, 1, 2})


def test_best_edges_forced_negative_connectors():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, -1.0), (1, 2, -2.0)])
    assert best_edges_for_vertex_set(g, {0, 1, 2}) == frozenset({0, 1})


def test_best_edges_unconnectable_returns_none():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, 1.0)])
    assert best_edges_for_vertex_set(g, {0, 2}) is None


def test_best_edges_empty_set_rejected():
    g = build_graph({0: 0.0}, [])
    with pytest.raises(ValueError):
        best_edges_for_vertex_set(g, set())


def test_best_edges_matches_exhaustive_edge_enumeration():
    # On graphs with few induced edges, compare against trying every subset.
    for seed in range(40):
        graph = random_instance(seed, n_range=(3, 6), density=0.5).graph
        vertex_set = frozenset(graph.vertices())
        induced = graph.edge_ids()
        if len(induced) > 6:
            continue
        best = None
        for k in range(len(induced) + 1):
            for subset in combinations(induced, k):
                candidate = subgraph_of(graph, vertex_set, subset)
                if not is_connected(candidate):
                    continue
                weight = total_weight(candidate)
                if best is None or weight > best:
                    best = weight
        got = best_edges_for_vertex_set(graph, vertex_set)
        if best is None:
            assert got is None
        else:
            assert got is not None
            assert total_weight(subgraph_of(graph, vertex_set, got)) == pytest.approx(best)


def test_brute_force_negative_vertex_unrooted():
    g = build_graph({0: -1.0}, [])
    result = brute_force(Instance(g))
    assert result.weight == 0.0
    assert result.solution.vertices == frozenset()
    assert result.status == "optimal"


def test_brute_force_negative_vertex_rooted():
    g = build_graph({0: -1.0}, [])
    result = brute_force(Instance(g, root=0))
    assert result.weight == -1.0
    assert result.solution.vertices == {0}


def test_brute_force_negative_bridge():
    g = build_graph({0: 2.0, 1: 2.0}, [(0, 1, -3.0)])
    result = brute_force(Instance(g))
    assert result.weight == 2.0
    assert len(result.solution.vertices) == 1


def test_brute_force_size_guard():
    g = build_graph({i: 0.0 for i in range(16)}, [])
    with pytest.raises(ValueError):
        brute_force(Instance(g))


def test_brute_force_agrees_with_independent_growth_oracle():
    # Two different enumeration strategies must find the same optimum.
    for seed in range(25):
        instance = random_instance(seed, n_range=(3, 7), density=0.45)
        if instance.graph.edge_count > 12:
            continue
        _, expected = second_oracle(instance)
        assert brute_force(instance).weight == pytest.approx(expected, abs=1e-12)


def test_enumerate_feasible_single_vertex():
    g = build_graph({0: 2.0}, [])
    model = build_model(Instance(g))
    points = enumerate_feasible(model)
    projections = {
        (point[y_name(0)],) for point, _ in points
    }
    assert len(points) == 2
    assert projections == {(0.0,), (1.0,)}
    assert max(value for _, value in points) == 2.0


def test_enumerate_feasible_single_edge_projections():
    g = build_graph({0: 1.0, 1: 1.0}, [(0, 1, 1.0)])
    model = build_model(Instance(g))
    points = enumerate_feasible(model)
    projections = {
        (point[y_name(0)], point[y_name(1)], point[w_name(0)]) for point, _ in points
    }
    # {u, v} without the edge is infeasible: the non-root selected vertex
    # would need an in-arc over a selected edge.
    assert projections == {
        (0.0, 0.0, 0.0),
        (1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (1.0, 1.0, 1.0),
    }


def test_enumerate_feasible_triangle_matches_brute_force():
    for seed in range(6):
        instance = random_instance(seed, n_range=(3, 3), density=1.0)
        model = build_model(instance)
        points = enumerate_feasible(model)
        best = max(value for _, value in points)
        assert best == pytest.approx(brute_force(instance).weight, abs=1e-9)


def test_enumerate_feasible_size_guard():
    g = build_graph({i: 0.0 for i in range(6)}, [(i, i + 1, 1.0) for i in range(5)])
    model = build_model(Instance(g))
    with pytest.raises(ValueError):
        enumerate_feasible(model)
    assert enumerate_feasible(model, max_vertices=6)


def test_enumerate_feasible_rooted_excludes_empty_and_rootless():
    g = build_graph({0: -1.0, 1: 1.0}, [(0, 1, 1.0)])
    model = build_model(Instance(g, root=0))
    points = enumerate_feasible(model)
    for point, _ in points:
        assert point[y_name(0)] == 1.0
        assert point[f"r_0"] == 1.0
