"""Discrete gradients and the discrete gradient time stepper."""

from lyapstep.dgrad.gradient import discrete_gradient
from lyapstep.dgrad.scheme import (
    DGScheme,
    DiscreteGradientKind,
    GradientKind,
    LtildeRule,
    NewtonConfig,
    Predictor,
    StepDiagnostics,
    StepStatus,
    default_scheme,
    is_quadratic_1d,
    validate_closed_form,
)
from lyapstep.dgrad.stepper import closed_form_update, dg_residual, dg_step, dg_step_explicit_1d

__all__ = [
    "DGScheme",
    "DiscreteGradientKind",
    "GradientKind",
    "LtildeRule",
    "NewtonConfig",
    "Predictor",
    "StepDiagnostics",
    "StepStatus",
    "closed_form_update",
    "default_scheme",
    "dg_residual",
    "dg_step",
    "dg_step_explicit_1d",
    "discrete_gradient",
    "is_quadratic_1d",
    "validate_closed_form",
]
