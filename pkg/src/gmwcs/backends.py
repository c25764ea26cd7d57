"""Relaxation backends for the cutting-plane loop.

A backend accepts a model (binary variables relaxed to [0, 1] if it solves a
relaxation), returns variable values and an objective that upper-bounds the
integer optimum of the current constraint set, and picks up any constraints
added between solves.

Two implementations ship with the package: an exhaustive integer enumerator
for small graphs (exercises the loop without an external solver) and an
adapter that shells out to an arbitrary command via LP text and a value file.
"""

from __future__ import annotations

import subprocess
import tempfile
from pathlib import Path
from typing import Protocol

from .formulation import Assignment, MipModel, export_lp
from .oracle import enumerate_feasible


class BackendError(RuntimeError):
    """A backend failed or returned an unusable answer."""


class RelaxationBackend(Protocol):
    integral: bool

    def solve(self, model: MipModel) -> tuple[float, Assignment]:
        """Return (objective, values); objective bounds the integer optimum."""
        ...


class EnumerationBackend:
    """Exact integer solve by feasible-point enumeration (small graphs only)."""

    integral = True

    def __init__(self, max_vertices: int = 8):
        self.max_vertices = max_vertices

    def solve(self, model: MipModel) -> tuple[float, Assignment]:
        points = enumerate_feasible(model, max_vertices=self.max_vertices)
        if not points:
            raise BackendError("model has no feasible integer point")
        best_assignment, best_value = points[0]
        for assignment, value in points[1:]:
            if value > best_value:
                best_assignment, best_value = assignment, value
        return best_value, best_assignment


class ScriptBackend:
    """Adapter around an external command.

    The command is invoked with two extra arguments: the path of an LP file
    describing the current model and the path where it must write its answer,
    one "name value" pair per line covering every model variable.
    """

    def __init__(self, command, integral: bool = False):
        self.command = list(command)
        self.integral = integral

    def solve(self, model: MipModel) -> tuple[float, Assignment]:
        with tempfile.TemporaryDirectory(prefix="gmwcs-backend-") as tmp:
            lp_path = Path(tmp) / "model.lp"
            out_path = Path(tmp) / "values.txt"
            lp_path.write_text(export_lp(model))
            proc = subprocess.run(
                [*self.command, str(lp_path), str(out_path)],
                capture_output=True,
                text=True,
            )
            if proc.returncode != 0:
                raise BackendError(
                    f"backend command failed with exit code {proc.returncode}: {proc.stderr.strip()}"
                )
            if not out_path.exists():
                raise BackendError("backend command wrote no value file")
            values: Assignment = {}
            for line_no, line in enumerate(out_path.read_text().splitlines(), start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise BackendError(f"value file line {line_no} is malformed: {line!r}")
                name, raw = parts
                if name not in model.variables:
                    raise BackendError(f"value file names unknown variable {name}")
                try:
                    values[name] = float(raw)
                except ValueError as exc:
                    raise BackendError(f"value file line {line_no}: bad number {raw!r}") from exc
        missing = [name for name in model.variables if name not in values]
        if missing:
            raise BackendError(f"value file is missing variables: {missing[:5]}")
        objective = sum(coef * values[name] for name, coef in model.objective)
        return objective, values
