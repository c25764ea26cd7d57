"""Arborescence-based MIP model: build, check assignments, encode subgraphs,
export LP text.

Connectivity of the selected subgraph is certified by a rooted arborescence:
binary arc variables pick one in-arc per selected non-root vertex and depth
variables increase by one along arcs, which rules out cycles.  Optional
strengthening: the root must be the heaviest selected vertex, and depths must
match a breadth-first traversal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Instance, Subgraph, WeightedGraph, graph_is_connected, is_connected

Assignment = dict[str, float]


def format_number(x: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


@dataclass(frozen=True)
class ModelOptions:
    symmetry_breaking: bool = True
    bfs_restriction: bool = True


@dataclass(frozen=True)
class MipVariable:
    name: str
    kind: str  # y, w, x, r, d
    subject: tuple
    lower: float
    upper: float
    binary: bool


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    coeffs: tuple[tuple[str, float], ...]
    sense: str  # "<=", "=", ">="
    rhs: float
    tag: str = ""


def y_name(v: int) -> str:
    return f"y_{v}"


def w_name(e: int) -> str:
    return f"w_{e}"


def x_name(u: int, v: int) -> str:
    return f"x_{u}_{v}"


def r_name(v: int) -> str:
    return f"r_{v}"


def d_name(v: int) -> str:
    return f"d_{v}"


class MipModel:
    """Variables, ordered constraints and a maximization objective."""

    def __init__(self, graph: WeightedGraph, root: int | None, options: ModelOptions):
        self.graph = graph
        self.root = root
        self.options = options
        self.n = graph.vertex_count
        self.variables: dict[str, MipVariable] = {}
        self.constraints: list[LinearConstraint] = []
        self.objective: list[tuple[str, float]] = []

    @property
    def rooted(self) -> bool:
        return self.root is not None

    def add_variable(self, name, kind, subject, lower, upper, binary) -> None:
        if name in self.variables:
            raise ValueError(f"duplicate variable {name}")
        self.variables[name] = MipVariable(name, kind, subject, lower, upper, binary)

    def add_constraint(self, coeffs, sense, rhs, tag) -> None:
        coeffs = tuple((name, float(c)) for name, c in coeffs if c != 0)
        if not coeffs:
            raise ValueError(f"constraint {tag!r} has no nonzero coefficients")
        for name, _ in coeffs:
            if name not in self.variables:
                raise ValueError(f"constraint references unknown variable {name}")
        self.constraints.append(
            LinearConstraint(f"c{len(self.constraints) + 1}", coeffs, sense, float(rhs), tag)
        )

    def with_extra_constraints(self, extras) -> MipModel:
        """A copy sharing variables, with constraints appended (used for cuts)."""
        clone = MipModel(self.graph, self.root, self.options)
        clone.variables = self.variables
        clone.objective = self.objective
        clone.constraints = list(self.constraints)
        for coeffs, sense, rhs, tag in extras:
            clone.add_constraint(coeffs, sense, rhs, tag)
        return clone

    def variables_of_kind(self, kind: str) -> list[MipVariable]:
        return [v for v in self.variables.values() if v.kind == kind]


def build_model(instance: Instance, options: ModelOptions = ModelOptions()) -> MipModel:
    """Emit the full constraint system for a simple connected graph.

    Per edge (u,v): w_e <= y_u, w_e <= y_v and x_uv + x_vu <= w_e.  At most
    one arborescence root; every selected non-root vertex has exactly one
    in-arc.  Depths d lie in [1, n], the root's depth is 1 and an arc forces
    the head's depth to be the tail's plus one.  Unrooted models optionally
    restrict the root to the heaviest selected vertex; rooted models fix it.
    BFS restriction: depths across a selected edge differ by at most one.
    """
    graph = instance.graph
    if graph.vertex_count == 0:
        raise ValueError("cannot build a model for an empty graph")
    if graph.has_parallel_edges():
        raise ValueError("model requires a simple graph (parallel edges present)")
    if not graph_is_connected(graph):
        raise ValueError("model requires a connected graph")
    n = graph.vertex_count
    verts = graph.vertices()
    eids = graph.edge_ids()
    model = MipModel(graph, instance.root, options)

    for v in verts:
        model.add_variable(y_name(v), "y", (v,), 0, 1, True)
    for e in eids:
        model.add_variable(w_name(e), "w", (e,), 0, 1, True)
    for e in eids:
        u, v = graph.endpoints(e)
        model.add_variable(x_name(u, v), "x", (u, v), 0, 1, True)
        model.add_variable(x_name(v, u), "x", (v, u), 0, 1, True)
    for v in verts:
        model.add_variable(r_name(v), "r", (v,), 0, 1, True)
    for v in verts:
        model.add_variable(d_name(v), "d", (v,), 1, n, False)

    model.objective = [(y_name(v), graph.vertex_weight(v)) for v in verts]
    model.objective += [(w_name(e), graph.edge_weight(e)) for e in eids]

    for e in eids:
        for v in graph.endpoints(e):
            model.add_constraint([(w_name(e), 1), (y_name(v), -1)], "<=", 0, "edge_endpoint")
    # At most one root; zero roots is the (feasible) empty selection, and a
    # nonempty selection cannot be rootless because in-arcs would then form a
    # cycle, which the depth constraints forbid.
    model.add_constraint([(r_name(v), 1) for v in verts], "<=", 1, "one_root")
    for v in verts:
        coeffs = [(x_name(graph.other_endpoint(e, v), v), 1) for e in graph.incident_edges(v)]
        coeffs += [(r_name(v), 1), (y_name(v), -1)]
        model.add_constraint(coeffs, "=", 0, "vertex_in_arc")
    # Root depth: d_v + (n-1) r_v <= n, i.e. d_v = 1 when v is the root.
    for v in verts:
        model.add_constraint([(d_name(v), 1), (r_name(v), n - 1)], "<=", n, "root_depth")
    # Arc (a,b) selected forces d_b = d_a + 1; unselected arcs are unrestricted.
    for e in eids:
        u, v = graph.endpoints(e)
        for a, b in ((u, v), (v, u)):
            model.add_constraint(
                [(d_name(b), 1), (d_name(a), -1), (x_name(a, b), -(n + 1))], ">=", -n,
                "arc_depth_step",
            )
            model.add_constraint(
                [(d_name(a), 1), (d_name(b), -1), (x_name(a, b), -(n - 1))], ">=", -n,
                "arc_depth_back",
            )
    for e in eids:
        u, v = graph.endpoints(e)
        model.add_constraint(
            [(x_name(u, v), 1), (x_name(v, u), 1), (w_name(e), -1)], "<=", 0, "edge_arc_pair"
        )
    if instance.rooted:
        model.add_constraint([(r_name(instance.root), 1)], "=", 1, "root_fixed")
    elif options.symmetry_breaking:
        for u in verts:
            coeffs = [
                (r_name(v), 1)
                for v in verts
                if (graph.vertex_weight(v), v) < (graph.vertex_weight(u), u)
            ]
            coeffs.append((y_name(u), 1))
            model.add_constraint(coeffs, "<=", 1, "root_order")
    if options.bfs_restriction:
        for e in eids:
            u, v = graph.endpoints(e)
            model.add_constraint(
                [(d_name(v), 1), (d_name(u), -1), (w_name(e), n - 1)], "<=", n, "bfs_forward"
            )
            model.add_constraint(
                [(d_name(u), 1), (d_name(v), -1), (w_name(e), n - 1)], "<=", n, "bfs_backward"
            )
    return model


def root_order_key(graph: WeightedGraph):
    """The fixed vertex order used by the root-order rule: weight, then id."""
    return lambda v: (graph.vertex_weight(v), v)


def encode_subgraph(graph: WeightedGraph, subgraph: Subgraph, root: int | None = None) -> Assignment:
    """A feasible assignment certifying a connected nonempty subgraph.

    BFS from the root (default: the heaviest selected vertex), parent arcs to
    the smallest-id discovering neighbour, depths = BFS layer + 1, and depth n
    for unselected vertices.
    """
    if not subgraph.vertices:
        raise ValueError("cannot encode an empty subgraph")
    if not is_connected(subgraph):
        raise ValueError("cannot encode a disconnected subgraph")
    if root is None:
        root = max(subgraph.vertices, key=root_order_key(graph))
    elif root not in subgraph.vertices:
        raise ValueError(f"root {root} is not in the subgraph")
    n = graph.vertex_count

    depth = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in graph.incident_edges(v):
            if e not in subgraph.edges:
                continue
            u = graph.other_endpoint(e, v)
            if u not in depth:
                depth[u] = depth[v] + 1
                queue.append(u)

    assignment: Assignment = {}
    for v in graph.vertices():
        assignment[y_name(v)] = 1.0 if v in subgraph.vertices else 0.0
        assignment[r_name(v)] = 1.0 if v == root else 0.0
        assignment[d_name(v)] = float(depth[v] + 1) if v in depth else float(n)
    for e in graph.edge_ids():
        u, v = graph.endpoints(e)
        assignment[w_name(e)] = 1.0 if e in subgraph.edges else 0.0
        assignment[x_name(u, v)] = 0.0
        assignment[x_name(v, u)] = 0.0
    for v in sorted(subgraph.vertices):
        if v == root:
            continue
        parents = [
            graph.other_endpoint(e, v)
            for e in graph.incident_edges(v)
            if e in subgraph.edges and depth[graph.other_endpoint(e, v)] == depth[v] - 1
        ]
        assignment[x_name(min(parents), v)] = 1.0
    return assignment


def check_assignment(model: MipModel, assignment: Assignment) -> list[str]:
    """Names of violated constraints (plus domain pseudo-names); [] iff feasible."""
    violations: list[str] = []
    for name, var in model.variables.items():
        if name not in assignment:
            raise ValueError(f"assignment is missing variable {name}")
        value = assignment[name]
        if var.binary:
            if value != 0 and value != 1:
                violations.append(f"binary:{name}")
        elif not (var.lower <= value <= var.upper):
            violations.append(f"bounds:{name}")
    for constraint in model.constraints:
        lhs = 0.0
        for name, coef in constraint.coeffs:
            lhs += coef * assignment[name]
        if constraint.sense == "<=":
            ok = lhs <= constraint.rhs
        elif constraint.sense == ">=":
            ok = lhs >= constraint.rhs
        else:
            ok = lhs == constraint.rhs
        if not ok:
            violations.append(constraint.name)
    return violations


def _render_terms(terms) -> str:
    parts = []
    for k, (name, coef) in enumerate(terms):
        magnitude = format_number(abs(coef))
        if k == 0:
            parts.append(f"-{magnitude} {name}" if coef < 0 else f"{magnitude} {name}")
        else:
            parts.append(f"- {magnitude} {name}" if coef < 0 else f"+ {magnitude} {name}")
    return " ".join(parts)


def export_lp(model: MipModel) -> str:
    """Deterministic LP text: objective, named rows, d bounds, binaries."""
    lines = ["Maximize", f" obj: {_render_terms(model.objective)}", "Subject To"]
    for constraint in model.constraints:
        lines.append(
            f" {constraint.name}: {_render_terms(constraint.coeffs)}"
            f" {constraint.sense} {format_number(constraint.rhs)}"
        )
    lines.append("Bounds")
    for var in model.variables.values():
        if not var.binary:
            lines.append(f" {format_number(var.lower)} <= {var.name} <= {format_number(var.upper)}")
    lines.append("Binaries")
    for var in model.variables.values():
        if var.binary:
            lines.append(f" {var.name}")
    lines.append("End")
    return "\n".join(lines) + "\n"
