import pytest

from gmwcs import (
    Subgraph,
    WeightedGraph,
    biconnected_decomposition,
    connected_components,
    is_connected,
    total_weight,
)
from gmwcs.graph import component_vertex_set, graph_is_connected, subgraph_of

from conftest import build_graph, random_instance


def test_total_weight_empty():
    g = build_graph({0: 1.0}, [])
    assert total_weight(Subgraph.empty(g)) == 0.0


def test_total_weight_single_vertex():
    g = build_graph({0: 3.5}, [])
    assert total_weight(subgraph_of(g, [0])) == 3.5


def test_total_weight_triangle():
    g = build_graph({0: 1.0, 1: 2.0, 2: 3.0}, [(0, 1, -1.0), (1, 2, -1.0), (0, 2, -1.0)])
    assert total_weight(subgraph_of(g, [0, 1, 2], [0, 1, 2])) == 3.0


def test_total_weight_additive_over_disjoint_union():
    g = build_graph({0: 1.5, 1: 2.5, 2: -4.0, 3: 0.5}, [(0, 1, 2.0), (2, 3, -1.0)])
    left = subgraph_of(g, [0, 1], [0])
    right = subgraph_of(g, [2, 3], [1])
    union = subgraph_of(g, [0, 1, 2, 3], [0, 1])
    assert total_weight(union) == pytest.approx(total_weight(left) + total_weight(right))


def test_is_connected_two_isolated_vertices():
    g = build_graph({0: 0.0, 1: 0.0}, [])
    assert not is_connected(subgraph_of(g, [0, 1]))


def test_is_connected_single_vertex_and_empty():
    g = build_graph({0: 0.0}, [])
    assert is_connected(subgraph_of(g, [0]))
    assert is_connected(Subgraph.empty(g))


def test_is_connected_cycle_minus_edge():
    g = build_graph(
        {0: 0.0, 1: 0.0, 2: 0.0, 3: 0.0},
        [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)],
    )
    assert is_connected(subgraph_of(g, [0, 1, 2, 3], [0, 1, 2]))


def test_subgraph_rejects_dangling_edge():
    g = build_graph({0: 0.0, 1: 0.0}, [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        subgraph_of(g, [0], [0])


def test_self_loop_rejected():
    g = build_graph({0: 0.0}, [])
    with pytest.raises(ValueError):
        g.add_edge(0, 0, 1.0)


def test_duplicate_vertex_rejected():
    g = build_graph({0: 0.0}, [])
    with pytest.raises(ValueError):
        g.add_vertex(0, 1.0)


def test_non_finite_weight_rejected():
    g = WeightedGraph()
    with pytest.raises(ValueError):
        g.add_vertex(0, float("inf"))


def test_parallel_edges_allowed():
    g = build_graph({0: 0.0, 1: 0.0}, [(0, 1, 1.0), (0, 1, 2.0)])
    assert g.edge_count == 2
    assert g.has_parallel_edges()
    assert g.edges_between(0, 1) == [0, 1]


def test_connected_components_connected_graph():
    g = build_graph({0: 1.0, 1: 2.0}, [(0, 1, 3.0)])
    comps = connected_components(g)
    assert len(comps) == 1
    assert comps[0].vertices() == [0, 1]
    assert comps[0].vertex_weight(0) == 1.0
    assert comps[0].edge_weight(0) == 3.0


def test_connected_components_two_triangles():
    g = build_graph(
        {i: float(i) for i in range(6)},
        [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)],
    )
    comps = connected_components(g)
    assert [c.vertex_count for c in comps] == [3, 3]
    assert sum(c.vertex_count for c in comps) == g.vertex_count
    assert sum(c.edge_count for c in comps) == g.edge_count


def test_connected_components_empty_graph():
    assert connected_components(WeightedGraph()) == []


def test_biconnected_triangle():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    comps, cuts = biconnected_decomposition(g)
    assert len(comps) == 1
    assert comps[0] == frozenset({0, 1, 2})
    assert cuts == frozenset()


def test_biconnected_two_triangles_sharing_vertex():
    g = build_graph(
        {i: 0.0 for i in range(5)},
        [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (2, 4, 1.0)],
    )
    comps, cuts = biconnected_decomposition(g)
    assert len(comps) == 2
    assert cuts == frozenset({2})
    assert sorted(len(c) for c in comps) == [3, 3]


def test_biconnected_path():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, 1.0), (1, 2, 1.0)])
    comps, cuts = biconnected_decomposition(g)
    assert set(comps) == {frozenset({0}), frozenset({1})}
    assert cuts == frozenset({1})


def test_biconnected_parallel_edges_form_one_component():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, 1.0), (0, 1, 2.0), (1, 2, 1.0)])
    comps, cuts = biconnected_decomposition(g)
    assert frozenset({0, 1}) in comps
    assert frozenset({2}) in comps
    assert cuts == frozenset({1})


def test_biconnected_rejects_disconnected():
    g = build_graph({0: 0.0, 1: 0.0}, [])
    with pytest.raises(ValueError):
        biconnected_decomposition(g)


def test_biconnected_edges_partitioned():
    for seed in range(25):
        graph = random_instance(seed, n_range=(3, 12)).graph
        comps, _ = biconnected_decomposition(graph)
        all_edges = [e for comp in comps for e in comp]
        assert sorted(all_edges) == graph.edge_ids()


def _without_vertex(graph, vertex):
    g = graph.copy()
    g.remove_vertex(vertex)
    return g


def test_cut_vertices_characterized_by_removal():
    # Removing a cut vertex disconnects the graph; removing any other
    # vertex keeps it connected.
    for seed in range(25):
        graph = random_instance(seed, n_range=(3, 12)).graph
        _, cuts = biconnected_decomposition(graph)
        for v in graph.vertices():
            if graph.vertex_count == 1:
                continue
            still_connected = graph_is_connected(_without_vertex(graph, v))
            assert still_connected == (v not in cuts), f"vertex {v} seed {seed}"


def test_component_vertex_set():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, 1.0), (1, 2, 1.0)])
    assert component_vertex_set(g, [0]) == frozenset({0, 1})
