"""Exact branch-and-bound over include/exclude decisions on vertices and edges.

Search state is a pair of forced-in / forced-out sets grown outward from a
seed.  A node is pruned when the forced-in region cannot be connected through
the remaining elements, or when the region weight plus all reachable positive
undecided weights cannot beat the incumbent.  Unrooted instances are solved
as a sequence of seeded searches: the i-th search forces seed i in and all
earlier seeds out, which partitions the nonempty solution space.

Parallel mode shares work through a queue of frontier subproblems and a
monotone incumbent; the optimal value is independent of the worker count.
"""

from __future__ import annotations

import threading
import time
from collections import deque

from .graph import Instance, Subgraph, graph_is_connected, total_weight
from .results import OPTIMAL, TIMEOUT, SolveConfig, SolveResult

UNDECIDED, IN, OUT = 0, 1, 2

# Expand the subproblem queue to roughly this many items per worker before
# the workers start.
_SPLIT_FACTOR = 4


class _Compiled:
    """Index-based view of one instance graph."""

    def __init__(self, graph):
        self.graph = graph
        self.vids = graph.vertices()
        self.eids = graph.edge_ids()
        self.n = len(self.vids)
        self.m = len(self.eids)
        vindex = {v: i for i, v in enumerate(self.vids)}
        self.vw = [graph.vertex_weight(v) for v in self.vids]
        self.ew = [graph.edge_weight(e) for e in self.eids]
        self.ends = []
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for j, e in enumerate(self.eids):
            u, v = graph.endpoints(e)
            ui, vi = vindex[u], vindex[v]
            self.ends.append((ui, vi))
            self.inc[ui].append((j, vi))
            self.inc[vi].append((j, ui))
        self.vindex = vindex


class _State:
    __slots__ = ("vstate", "estate", "in_weight", "in_verts", "in_edges")

    def __init__(self, n: int, m: int):
        self.vstate = bytearray(n)
        self.estate = bytearray(m)
        self.in_weight = 0.0
        self.in_verts: list[int] = []
        self.in_edges: list[int] = []

    def clone(self) -> _State:
        s = _State.__new__(_State)
        s.vstate = bytearray(self.vstate)
        s.estate = bytearray(self.estate)
        s.in_weight = self.in_weight
        s.in_verts = list(self.in_verts)
        s.in_edges = list(self.in_edges)
        return s


class _Incumbent:
    """Best solution so far; updates are monotone and thread-safe."""

    def __init__(self, weight: float, vertices, edges):
        self.weight = weight
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self._lock = threading.Lock()

    def update(self, weight: float, vertices, edges) -> None:
        if weight <= self.weight:
            return
        with self._lock:
            if weight > self.weight:
                self.weight = weight
                self.vertices = tuple(vertices)
                self.edges = tuple(edges)


class _Search:
    """Depth-first search with an undo trail; one per worker."""

    def __init__(self, comp: _Compiled, incumbent: _Incumbent, deadline: float | None):
        self.c = comp
        self.incumbent = incumbent
        self.deadline = deadline
        self.aborted = False
        self.open_bound = float("-inf")
        self.nodes = 0
        self._vmark = [0] * comp.n
        self._stamp = 0

    # -- state transitions (all recorded on the trail) ----------------------

    def _include_vertex(self, s: _State, i: int, trail: list) -> None:
        s.vstate[i] = IN
        s.in_weight += self.c.vw[i]
        s.in_verts.append(i)
        trail.append((0, i))

    def _include_edge(self, s: _State, j: int, trail: list) -> None:
        s.estate[j] = IN
        s.in_weight += self.c.ew[j]
        s.in_edges.append(j)
        trail.append((1, j))
        u, v = self.c.ends[j]
        if s.vstate[u] == UNDECIDED:
            self._include_vertex(s, u, trail)
        if s.vstate[v] == UNDECIDED:
            self._include_vertex(s, v, trail)

    def _exclude_vertex(self, s: _State, i: int, trail: list) -> None:
        s.vstate[i] = OUT
        trail.append((2, i))
        for j, _ in self.c.inc[i]:
            if s.estate[j] == UNDECIDED:
                s.estate[j] = OUT
                trail.append((3, j))

    def _exclude_edge(self, s: _State, j: int, trail: list) -> None:
        s.estate[j] = OUT
        trail.append((3, j))

    def _undo(self, s: _State, trail: list, mark: int = 0) -> None:
        while len(trail) > mark:
            kind, idx = trail.pop()
            if kind == 0:
                s.vstate[idx] = UNDECIDED
                s.in_weight -= self.c.vw[idx]
                s.in_verts.pop()
            elif kind == 1:
                s.estate[idx] = UNDECIDED
                s.in_weight -= self.c.ew[idx]
                s.in_edges.pop()
            elif kind == 2:
                s.vstate[idx] = UNDECIDED
            else:
                s.estate[idx] = UNDECIDED

    # -- node processing -----------------------------------------------------

    def _region_bound(self, s: _State) -> tuple[bool, float]:
        """(feasible, upper bound): BFS over non-excluded elements from the region.

        Bound: any completion element v outside the region comes with at least
        one selected incident edge, so v contributes at most its weight plus
        half of every positive allowed incident edge (or half the best
        negative one when no positive edge is available); the remaining half
        of positive edges on the region boundary is charged to the region.
        """
        c = self.c
        self._stamp += 1
        stamp = self._stamp
        vmark = self._vmark
        start = s.in_verts[0]
        vmark[start] = stamp
        visited = [start]
        queue = deque(visited)
        seen_in = 1 if s.vstate[start] == IN else 0
        while queue:
            i = queue.popleft()
            for j, k in c.inc[i]:
                if s.estate[j] == OUT or vmark[k] == stamp:
                    continue
                vmark[k] = stamp
                visited.append(k)
                queue.append(k)
                if s.vstate[k] == IN:
                    seen_in += 1
        if seen_in != len(s.in_verts):
            return False, 0.0
        extra = 0.0
        for i in visited:
            if s.vstate[i] == IN:
                for j, k in c.inc[i]:
                    if s.estate[j] == UNDECIDED and c.ew[j] > 0 and s.vstate[k] != IN:
                        extra += 0.5 * c.ew[j]
                continue
            positive_half = 0.0
            best_negative = float("-inf")
            for j, _ in c.inc[i]:
                if s.estate[j] == OUT:
                    continue
                w = c.ew[j]
                if w > 0:
                    positive_half += w
                elif w > best_negative:
                    best_negative = w
            t = c.vw[i] + 0.5 * positive_half
            if positive_half == 0.0 and best_negative != float("-inf"):
                t += 0.5 * best_negative
            if t > 0:
                extra += t
        return True, s.in_weight + extra

    def _pick_branch(self, s: _State) -> tuple[int, int] | None:
        """Max |weight| undecided element on the frontier; (kind, index)."""
        c = self.c
        best = None
        best_key = None
        for i in s.in_verts:
            for j, k in c.inc[i]:
                if s.estate[j] != UNDECIDED:
                    continue
                key = (abs(c.ew[j]), 0, -j)
                if best_key is None or key > best_key:
                    best_key, best = key, (1, j)
                if s.vstate[k] == UNDECIDED:
                    key = (abs(c.vw[k]), 1, -k)
                    if key > best_key:
                        best_key, best = key, (0, k)
        return best

    def run(self, s: _State) -> None:
        self._node(s)

    def _propagate(self, s: _State, trail: list) -> None:
        c = self.c
        # Non-negative edges inside the region can always be taken.
        for i in list(s.in_verts):
            for j, k in c.inc[i]:
                if s.estate[j] == UNDECIDED and s.vstate[k] == IN and c.ew[j] >= 0:
                    self._include_edge(s, j, trail)
        # Dead-end elimination: an undecided vertex whose only remaining
        # attachment {v, e} is non-positive can be dropped from any completion
        # without losing weight, so exclude it.  Cascades as degrees fall.
        degree = [0] * c.n
        for j in range(c.m):
            if s.estate[j] != OUT:
                u, v = c.ends[j]
                degree[u] += 1
                degree[v] += 1
        worklist = [i for i in range(c.n) if s.vstate[i] == UNDECIDED and degree[i] <= 1]
        while worklist:
            i = worklist.pop()
            if s.vstate[i] != UNDECIDED or degree[i] > 1:
                continue
            if degree[i] == 0:
                self._exclude_vertex(s, i, trail)
                continue
            for j, k in c.inc[i]:
                if s.estate[j] != OUT:
                    if c.vw[i] + c.ew[j] <= 0:
                        self._exclude_vertex(s, i, trail)
                        degree[k] -= 1
                        degree[i] = 0
                        if s.vstate[k] == UNDECIDED and degree[k] <= 1:
                            worklist.append(k)
                    break

    def _node(self, s: _State) -> None:
        if self.aborted:
            return
        self.nodes += 1
        trail: list = []
        self._propagate(s, trail)
        feasible, bound = self._region_bound(s)
        if not feasible:
            self._undo(s, trail)
            return
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.aborted = True
            self.open_bound = max(self.open_bound, bound)
            self._undo(s, trail)
            return
        if bound <= self.incumbent.weight:
            self._undo(s, trail)
            return
        branch = self._pick_branch(s)
        if branch is None:
            # Closed region: all adjacent elements decided, hence connected.
            self.incumbent.update(s.in_weight, list(s.in_verts), list(s.in_edges))
            self._undo(s, trail)
            return
        mark = len(trail)
        kind, idx = branch
        if kind == 1:
            self._include_edge(s, idx, trail)
        else:
            self._include_vertex(s, idx, trail)
        self._node(s)
        self._undo(s, trail, mark)
        if self.aborted:
            self.open_bound = max(self.open_bound, bound)
            self._undo(s, trail)
            return
        if bound > self.incumbent.weight:
            if kind == 1:
                self._exclude_edge(s, idx, trail)
            else:
                self._exclude_vertex(s, idx, trail)
            self._node(s)
            self._undo(s, trail, mark)
            if self.aborted:
                self.open_bound = max(self.open_bound, bound)
        self._undo(s, trail)


def _quick_bound(comp: _Compiled, s: _State) -> float:
    """Cheap valid bound for unexplored subproblems: all undecided positives."""
    bound = s.in_weight
    for i in range(comp.n):
        if s.vstate[i] == UNDECIDED and comp.vw[i] > 0:
            bound += comp.vw[i]
    for j in range(comp.m):
        if s.estate[j] == UNDECIDED and comp.ew[j] > 0:
            bound += comp.ew[j]
    return bound


def _seed_states(comp: _Compiled, instance: Instance) -> list[_State]:
    dummy = _Search(comp, _Incumbent(float("-inf"), (), ()), None)
    states = []
    if instance.rooted:
        s = _State(comp.n, comp.m)
        dummy._include_vertex(s, comp.vindex[instance.root], [])
        states.append(s)
        return states
    seeds = sorted(range(comp.n), key=lambda i: (-comp.vw[i], i))
    for k, seed in enumerate(seeds):
        s = _State(comp.n, comp.m)
        for other in seeds[:k]:
            dummy._exclude_vertex(s, other, [])
        dummy._include_vertex(s, seed, [])
        states.append(s)
    return states


def _split_state(comp: _Compiled, state: _State) -> list[_State] | None:
    """Children of a subproblem by one include/exclude decision, or None."""
    helper = _Search(comp, _Incumbent(float("-inf"), (), ()), None)
    branch = helper._pick_branch(state)
    if branch is None:
        return None
    kind, idx = branch
    include = state.clone()
    exclude = state.clone()
    if kind == 1:
        helper._include_edge(include, idx, [])
        helper._exclude_edge(exclude, idx, [])
    else:
        helper._include_vertex(include, idx, [])
        helper._exclude_vertex(exclude, idx, [])
    return [include, exclude]


def branch_and_bound(
    instance: Instance, config: SolveConfig = SolveConfig(), deadline: float | None = None
) -> SolveResult:
    """Exact solve of one connected simple instance.

    Returns the optimum when the search space is exhausted; on hitting the
    deadline, returns the incumbent and the best outstanding bound.
    """
    graph = instance.graph
    if graph.has_parallel_edges():
        raise ValueError("branch and bound requires a simple graph")
    if not graph_is_connected(graph):
        raise ValueError("branch and bound requires a connected graph")
    if deadline is None and config.time_limit is not None:
        deadline = time.monotonic() + config.time_limit
    comp = _Compiled(graph)

    # Start from a cheap but valid incumbent so a timeout always has one.
    if instance.rooted:
        i = comp.vindex[instance.root]
        incumbent = _Incumbent(comp.vw[i], (i,), ())
    elif config.allow_empty_solution:
        incumbent = _Incumbent(0.0, (), ())
        if comp.n:
            i = max(range(comp.n), key=lambda k: (comp.vw[k], -k))
            incumbent.update(comp.vw[i], (i,), ())
    else:
        if comp.n == 0:
            raise ValueError("nonempty solution requested on an empty graph")
        i = max(range(comp.n), key=lambda k: (comp.vw[k], -k))
        incumbent = _Incumbent(comp.vw[i], (i,), ())

    states = _seed_states(comp, instance)
    aborted = False
    open_bound = float("-inf")

    if config.worker_count == 1 or len(states) == 0:
        search = _Search(comp, incumbent, deadline)
        for k, state in enumerate(states):
            search.run(state)
            if search.aborted:
                aborted = True
                open_bound = max(open_bound, search.open_bound)
                for rest in states[k + 1 :]:
                    open_bound = max(open_bound, _quick_bound(comp, rest))
                break
    else:
        pending = deque(states)
        target = _SPLIT_FACTOR * config.worker_count
        while len(pending) < target:
            state = pending.popleft()
            children = _split_state(comp, state)
            if children is None:
                pending.append(state)
                break
            pending.extend(children)
            if len(pending) > 4 * target:
                break
        queue: deque[_State] = pending
        lock = threading.Lock()
        searches = [_Search(comp, incumbent, deadline) for _ in range(config.worker_count)]

        def worker(search: _Search) -> None:
            while True:
                with lock:
                    if not queue:
                        return
                    state = queue.popleft()
                if search.aborted:
                    search.open_bound = max(search.open_bound, _quick_bound(comp, state))
                    continue
                search.run(state)

        threads = [threading.Thread(target=worker, args=(s,)) for s in searches]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for search in searches:
            if search.aborted:
                aborted = True
            open_bound = max(open_bound, search.open_bound)

    solution = Subgraph(
        graph,
        frozenset(comp.vids[i] for i in incumbent.vertices),
        frozenset(comp.eids[j] for j in incumbent.edges),
    )
    weight = total_weight(solution)
    if aborted:
        return SolveResult(solution, weight, max(open_bound, weight), TIMEOUT)
    return SolveResult(solution, weight, weight, OPTIMAL)
