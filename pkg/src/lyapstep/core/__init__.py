"""Gradient-system model, primitives and validity checks."""

from lyapstep.core.definiteness import Definiteness, DefinitenessReport, check_definiteness
from lyapstep.core.system import (
    GradientCheckReport,
    GradientSystem,
    LinearGradientReport,
    StateVector,
    as_state,
    check_gradient,
    eval_vector_field,
    verify_linear_gradient_form,
)

__all__ = [
    "Definiteness",
    "DefinitenessReport",
    "GradientCheckReport",
    "GradientSystem",
    "LinearGradientReport",
    "StateVector",
    "as_state",
    "check_definiteness",
    "check_gradient",
    "eval_vector_field",
    "verify_linear_gradient_form",
]
