"""Solve configuration and result records shared across the solver modules."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from .graph import Subgraph, total_weight

OPTIMAL = "optimal"
TIMEOUT = "timeout"
INFEASIBLE_ROOTED = "infeasible_rooted"

ENGINE_BRANCH_AND_BOUND = "branch_and_bound"
ENGINE_BACKEND_CUT_LOOP = "backend_cut_loop"


@dataclass(frozen=True)
class SolveConfig:
    time_limit: float | None = None
    worker_count: int = 1
    engine: str = ENGINE_BRANCH_AND_BOUND
    preprocess: bool = True
    decompose: bool = True
    symmetry_breaking: bool = True
    bfs_restriction: bool = True
    allow_empty_solution: bool = True
    backend: Any = None

    def __post_init__(self) -> None:
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.engine not in (ENGINE_BRANCH_AND_BOUND, ENGINE_BACKEND_CUT_LOOP):
            raise ValueError(f"unknown engine {self.engine!r}")

    def with_options(self, **kwargs) -> SolveConfig:
        return replace(self, **kwargs)


@dataclass
class SolveResult:
    solution: Subgraph
    weight: float
    upper_bound: float
    status: str = OPTIMAL

    def __post_init__(self) -> None:
        if self.weight > self.upper_bound + 1e-9:
            raise ValueError(
                f"incumbent weight {self.weight} exceeds upper bound {self.upper_bound}"
            )


def optimal_result(solution: Subgraph) -> SolveResult:
    w = total_weight(solution)
    return SolveResult(solution, w, w, OPTIMAL)
