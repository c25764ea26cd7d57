"""Exact solver for the generalized maximum-weight connected subgraph problem.

Both vertices and edges carry real weights; the goal is a connected subgraph
of maximum total weight, optionally forced to contain a root vertex.
"""

from .backends import BackendError, EnumerationBackend, RelaxationBackend, ScriptBackend
from .bnb import branch_and_bound
from .decomposition import DecompositionPlan, plan, solve_decomposed
from .formulation import (
    Assignment,
    LinearConstraint,
    MipModel,
    MipVariable,
    ModelOptions,
    build_model,
    check_assignment,
    encode_subgraph,
    export_lp,
)
from .graph import (
    Instance,
    Subgraph,
    WeightedGraph,
    biconnected_decomposition,
    connected_components,
    is_connected,
    total_weight,
)
from .oracle import best_edges_for_vertex_set, brute_force, enumerate_feasible
from .reductions import ReductionTrace, apply_rule1, apply_rule2, lift, preprocess
from .results import (
    ENGINE_BACKEND_CUT_LOOP,
    ENGINE_BRANCH_AND_BOUND,
    INFEASIBLE_ROOTED,
    OPTIMAL,
    TIMEOUT,
    SolveConfig,
    SolveResult,
)
from .separation import CutConstraint, FlowNetwork, find_violated_cuts, max_flow
from .solver import backend_cut_loop, solve

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BackendError",
    "CutConstraint",
    "DecompositionPlan",
    "ENGINE_BACKEND_CUT_LOOP",
    "ENGINE_BRANCH_AND_BOUND",
    "EnumerationBackend",
    "FlowNetwork",
    "INFEASIBLE_ROOTED",
    "Instance",
    "LinearConstraint",
    "MipModel",
    "MipVariable",
    "ModelOptions",
    "OPTIMAL",
    "ReductionTrace",
    "RelaxationBackend",
    "ScriptBackend",
    "SolveConfig",
    "SolveResult",
    "Subgraph",
    "TIMEOUT",
    "WeightedGraph",
    "apply_rule1",
    "apply_rule2",
    "backend_cut_loop",
    "best_edges_for_vertex_set",
    "biconnected_decomposition",
    "branch_and_bound",
    "brute_force",
    "build_model",
    "check_assignment",
    "connected_components",
    "encode_subgraph",
    "enumerate_feasible",
    "export_lp",
    "find_violated_cuts",
    "is_connected",
    "lift",
    "max_flow",
    "plan",
    "preprocess",
    "solve",
    "solve_decomposed",
    "total_weight",
]
