"""Implicit discrete gradient step solved by Newton iteration, and the 1-D closed form."""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from lyapstep.core.errors import InvalidParameterError, NonFiniteStateError, SingularStepError
from lyapstep.core.system import StateVector, as_state
from lyapstep.dgrad.gradient import discrete_gradient
from lyapstep.dgrad.scheme import DGScheme, Predictor, StepDiagnostics, StepStatus, validate_closed_form

logger = logging.getLogger(__name__)


def dg_residual(scheme: DGScheme, y: Any, z: Any, h: float) -> StateVector:
    """F(z) = z - y - h L~(y, z) dgrad V(y, z)."""
    if not h > 0:
        raise InvalidParameterError(f"Step size must be positive, got {h}")
    dim = scheme.system.dim
    y = as_state(y, dim)
    z = as_state(z, dim)
    grad = discrete_gradient(scheme, y, z)
    return z - y - h * (scheme.ltilde.evaluate(scheme.system, y, z) @ grad)


def _fd_jacobian(scheme: DGScheme, y: StateVector, z: StateVector, h: float, base: StateVector) -> np.ndarray:
    dim = z.shape[0]
    jac = np.empty((dim, dim))
    for j in range(dim):
        delta = scheme.newton.fd_jacobian_step * (1.0 + abs(z[j]))
        shifted = z.copy()
        shifted[j] += delta
        jac[:, j] = (dg_residual(scheme, y, shifted, h) - base) / (shifted[j] - z[j])
    return jac


def _predict(scheme: DGScheme, y: StateVector, h: float) -> StateVector:
    if scheme.newton.predictor is Predictor.IDENTITY:
        return y.copy()
    guess = y + h * scheme.system.vector_field(y)
    return guess if np.all(np.isfinite(guess)) else y.copy()


def _polish(
    scheme: DGScheme, y: StateVector, z: StateVector, h: float, jac: np.ndarray, residual: StateVector, norm: float
) -> tuple[StateVector, float]:
    """One more correction with the last Jacobian; kept only if the residual does not grow."""
    try:
        candidate = z - np.linalg.solve(jac, residual)
        candidate_norm = float(np.max(np.abs(dg_residual(scheme, y, candidate, h))))
    except (np.linalg.LinAlgError, NonFiniteStateError):
        return z, norm
    if candidate_norm <= norm:
        return candidate, candidate_norm
    return z, norm


def dg_step(scheme: DGScheme, y: Any, h: float) -> tuple[StateVector, StepDiagnostics]:
    """Advance one step of the discrete gradient method.

    Convergence means ``|F(z)|_inf <= abs_tol + rel_tol |y|_inf``. The
    converged iterate then gets one extra correction with the last Jacobian,
    which brings the residual down to roundoff and is not counted in
    ``newton_iters``. Failures are reported through the diagnostics status;
    the returned state is then the last Newton iterate.
    """
    if not h > 0:
        raise InvalidParameterError(f"Step size must be positive, got {h}")
    y = as_state(y, scheme.system.dim)
    config = scheme.newton
    tol = config.tolerance(y)
    v_start = float(scheme.system.V(y))

    z = _predict(scheme, y, h)
    norm = np.inf
    jac: np.ndarray | None = None
    reached = config.max_iters
    for iteration in range(config.max_iters + 1):
        try:
            residual = dg_residual(scheme, y, z, h)
        except NonFiniteStateError:
            return z, StepDiagnostics(iteration, np.inf, np.nan, StepStatus.NON_FINITE)
        norm = float(np.max(np.abs(residual)))
        if not np.isfinite(norm):
            return z, StepDiagnostics(iteration, np.inf, np.nan, StepStatus.NON_FINITE)
        if norm <= tol:
            if jac is not None and norm > 0.0:
                z, norm = _polish(scheme, y, z, h, jac, residual, norm)
            delta_v = float(scheme.system.V(z)) - v_start
            return z, StepDiagnostics(iteration, norm, delta_v, StepStatus.CONVERGED)
        if iteration == config.max_iters:
            break
        try:
            jac = _fd_jacobian(scheme, y, z, h, residual)
            z = z - np.linalg.solve(jac, residual)
        except np.linalg.LinAlgError:
            logger.debug("Singular Newton Jacobian at y=%s, h=%g (iteration %d)", y, h, iteration)
            reached = iteration
            break
        except NonFiniteStateError:
            return z, StepDiagnostics(iteration + 1, np.inf, np.nan, StepStatus.NON_FINITE)

    logger.debug("Newton did not converge at y=%s, h=%g: residual %.3e > %.3e", y, h, norm, tol)
    delta_v = float(scheme.system.V(z)) - v_start if np.all(np.isfinite(z)) else np.nan
    return z, StepDiagnostics(reached, norm, delta_v, StepStatus.MAX_ITERS)


def closed_form_update(scheme: DGScheme, y: float, h: float) -> float:
    """Closed-form step without re-validating the scheme."""
    state = np.array([float(y)])
    grad = scheme.system.gradV
    slope = float(grad(state)[0])
    half_curvature = 0.25 * float(grad(state + 1.0)[0] - grad(state - 1.0)[0])
    lval = float(scheme.system.Lmat(state)[0, 0])

    denom = 1.0 - h * lval * half_curvature
    if denom == 0.0 or not np.isfinite(denom):
        raise SingularStepError(f"Closed-form step is singular at y={state[0]}, h={h}")
    return float(state[0] + h * lval * slope / denom)


def dg_step_explicit_1d(scheme: DGScheme, y: float, h: float) -> float:
    """Closed-form discrete gradient step for a 1-D quadratic V with L~ = L(y).

    With V quadratic, dgrad V(y, z) = V'(y) + c (z - y) where c = V''/2, so
    the step relation is linear in z.
    """
    if not scheme.closed_form:
        validate_closed_form(scheme)
    if not h > 0:
        raise InvalidParameterError(f"Step size must be positive, got {h}")
    as_state(y, 1)
    return closed_form_update(scheme, float(np.asarray(y).reshape(-1)[0]), h)
