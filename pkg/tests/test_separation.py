import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmwcs import (
    FlowNetwork,
    Instance,
    brute_force,
    encode_subgraph,
    find_violated_cuts,
    max_flow,
)
from gmwcs.formulation import w_name, y_name
from gmwcs.graph import graph_is_connected
from gmwcs.separation import build_flow_network

from conftest import build_graph, random_instance


def _network(source, sink, arcs):
    net = FlowNetwork(source, sink)
    for u, v, cap in arcs:
        net.add_arc(u, v, cap)
    return net


def _exhaustive_min_cut(net: FlowNetwork) -> float:
    """Minimum directed cut capacity over all source/sink partitions."""
    nodes = sorted(set(net.capacity) | {net.source, net.sink})
    others = [v for v in nodes if v not in (net.source, net.sink)]
    best = float("inf")
    for k in range(len(others) + 1):
        for chosen in combinations(others, k):
            side = {net.source, *chosen}
            cap = sum(c for u, v, c in net.arcs() if u in side and v not in side)
            best = min(best, cap)
    return best


def test_single_arc():
    result = max_flow(_network(0, 1, [(0, 1, 0.5)]))
    assert result.value == 0.5
    assert result.min_cut == {(0, 1)}
    assert result.source_side == {0}


def test_path_bottleneck():
    result = max_flow(_network(0, 2, [(0, 1, 0.5), (1, 2, 0.3)]))
    assert result.value == pytest.approx(0.3)
    assert result.min_cut == {(1, 2)}


def test_source_equals_sink_rejected():
    with pytest.raises(ValueError):
        max_flow(_network(0, 0, []))


def test_disconnected_sink():
    result = max_flow(_network(0, 3, [(0, 1, 1.0), (2, 3, 1.0)]))
    assert result.value == 0.0
    assert result.min_cut == frozenset()


def test_negative_capacity_rejected():
    net = FlowNetwork(0, 1)
    with pytest.raises(ValueError):
        net.add_arc(0, 1, -0.5)


def test_diamond_matches_exhaustive_enumeration():
    arcs = [(0, 1, 0.7), (0, 2, 0.4), (1, 3, 0.3), (2, 3, 0.9), (1, 2, 0.2), (3, 4, 0.8)]
    net = _network(0, 4, arcs)
    result = max_flow(net)
    assert result.value == pytest.approx(_exhaustive_min_cut(net))
    cut_capacity = sum(c for u, v, c in net.arcs() if (u, v) in result.min_cut)
    assert cut_capacity == pytest.approx(result.value)


def test_random_networks_match_exhaustive_min_cut():
    rng = random.Random(5)
    for _ in range(120):
        n = rng.randint(2, 7)
        arcs = []
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < 0.45:
                    arcs.append((u, v, round(rng.uniform(0.0, 2.0), 3)))
        net = _network(0, n - 1, arcs)
        result = max_flow(net)
        assert result.value == pytest.approx(_exhaustive_min_cut(net), abs=1e-9)
        cut_capacity = sum(c for u, v, c in net.arcs() if (u, v) in result.min_cut)
        assert cut_capacity == pytest.approx(result.value, abs=1e-9)


def test_augmentation_count_bound():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(2, 7)
        arcs = [
            (u, v, rng.uniform(0.1, 1.0))
            for u in range(n)
            for v in range(n)
            if u != v and rng.random() < 0.5
        ]
        net = _network(0, n - 1, arcs)
        result = max_flow(net)
        assert result.augmentations <= n * max(1, len(arcs))


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=40, deadline=None)
def test_antiparallel_pairs_flow_equals_cut(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    net = FlowNetwork(0, n - 1)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.6:
                cap = rng.uniform(0.0, 1.0)
                net.add_arc(u, v, cap)
                net.add_arc(v, u, cap)
    result = max_flow(net)
    assert result.value == pytest.approx(_exhaustive_min_cut(net), abs=1e-9)


def test_violated_cut_on_fractional_path():
    g = build_graph({0: 0.0, 1: 0.0, 2: 0.0}, [(0, 1, 0.0), (1, 2, 0.0)])
    cuts = find_violated_cuts(
        g, root=0, w_values={0: 0.5, 1: 0.5}, y_values={1: 0.0, 2: 1.0}, tolerance=1e-6
    )
    assert len(cuts) == 1
    (cut,) = cuts
    assert cut.target == 2
    assert sum(0.5 for e in cut.edges) == pytest.approx(0.5)


def test_integral_connected_encodings_yield_no_cuts():
    for seed in range(30):
        instance = random_instance(seed, n_range=(3, 8), density=0.5, rooted=True)
        graph = instance.graph
        best = brute_force(instance)
        assignment = encode_subgraph(graph, best.solution, root=instance.root)
        w_values = {e: assignment[w_name(e)] for e in graph.edge_ids()}
        y_values = {v: assignment[y_name(v)] for v in graph.vertices()}
        assert find_violated_cuts(graph, instance.root, w_values, y_values) == []


def test_random_fractional_points_cuts_are_violated_and_valid():
    rng = random.Random(17)
    for seed in range(40):
        instance = random_instance(seed, n_range=(3, 8), density=0.5, rooted=True)
        graph = instance.graph
        w_values = {e: round(rng.random(), 3) for e in graph.edge_ids()}
        y_values = {v: round(rng.random(), 3) for v in graph.vertices()}
        cuts = find_violated_cuts(graph, instance.root, w_values, y_values)
        for cut in cuts:
            # violated at the queried point by more than the tolerance
            assert y_values[cut.target] - sum(w_values[e] for e in cut.edges) > 1e-6
            # the emitted capacity is the minimum over all cuts
            net = build_flow_network(graph, w_values, instance.root, cut.target)
            assert sum(w_values[e] for e in cut.edges) == pytest.approx(
                _exhaustive_min_cut(net), abs=1e-9
            )
            # removing the cut edges disconnects target from root
            pruned = graph.copy()
            for e in cut.edges:
                pruned.remove_edge(e)
            assert not _reachable(pruned, instance.root, cut.target)
            # never cuts off a feasible integral connected encoding
            for enc_seed in range(3):
                sub = _random_rooted_subgraph(instance, random.Random(enc_seed))
                if cut.target not in sub.vertices:
                    continue
                assert sum(1 for e in cut.edges if e in sub.edges) >= 1


def _reachable(graph, a, b):
    from collections import deque

    seen = {a}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        for e in graph.incident_edges(v):
            u = graph.other_endpoint(e, v)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return b in seen


def _random_rooted_subgraph(instance, rng):
    from gmwcs.graph import subgraph_of

    graph = instance.graph
    vertex_set = {instance.root}
    for _ in range(rng.randint(0, graph.vertex_count)):
        frontier = [
            (e, graph.other_endpoint(e, v))
            for v in vertex_set
            for e in graph.incident_edges(v)
            if graph.other_endpoint(e, v) not in vertex_set
        ]
        if not frontier:
            break
        vertex_set.add(rng.choice(frontier)[1])
    edges = [e for e in graph.edge_ids() if set(graph.endpoints(e)) <= vertex_set]
    return subgraph_of(graph, vertex_set, edges)
