"""Bundled benchmark problems and reference solutions."""

from lyapstep.problems.catalog import (
    DEFAULT_A,
    DEFAULT_B,
    ProblemKind,
    ProblemSpec,
    exact_solution,
    make_problem,
    parse_problem,
)
from lyapstep.problems.reference import (
    DEFAULT_H_REF,
    ReferenceTrajectory,
    reference_step_count,
    reference_trajectory,
)

__all__ = [
    "DEFAULT_A",
    "DEFAULT_B",
    "DEFAULT_H_REF",
    "ProblemKind",
    "ProblemSpec",
    "ReferenceTrajectory",
    "exact_solution",
    "make_problem",
    "parse_problem",
    "reference_step_count",
    "reference_trajectory",
]
