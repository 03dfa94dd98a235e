"""Fixed-step integration driver and Lyapunov-increment accounting."""

from __future__ import annotations

import logging
import math
from typing import Any

import numpy as np

from lyapstep.baselines import BaselineMethod, baseline_step
from lyapstep.analysis.model import BLOWUP_THRESHOLD, Trajectory, TrajectoryStatus
from lyapstep.core.errors import InvalidParameterError, NonFiniteStateError, SingularStepError
from lyapstep.core.system import GradientSystem, as_state
from lyapstep.dgrad.scheme import DGScheme, StepDiagnostics, StepStatus
from lyapstep.dgrad.stepper import closed_form_update, dg_residual, dg_step

logger = logging.getLogger(__name__)

Method = DGScheme | BaselineMethod


def method_label(method: Method) -> str:
    return method.label


def step_count(h: float, t_end: float) -> int:
    """Number of uniform steps needed to reach t >= t_end."""
    return max(1, math.ceil(t_end / h * (1.0 - 1e-12)))


def _closed_form_step(scheme: DGScheme, y: np.ndarray, h: float) -> tuple[np.ndarray, StepDiagnostics]:
    z = np.array([closed_form_update(scheme, y[0], h)])
    if not np.all(np.isfinite(z)):
        return z, StepDiagnostics(0, np.inf, np.nan, StepStatus.NON_FINITE)
    residual = float(np.max(np.abs(dg_residual(scheme, y, z, h))))
    delta_v = float(scheme.system.V(z)) - float(scheme.system.V(y))
    return z, StepDiagnostics(0, residual, delta_v, StepStatus.CONVERGED)


def integrate(
    method: Method,
    system: GradientSystem,
    y0: Any,
    h: float,
    t_end: float,
    *,
    blowup_threshold: float = BLOWUP_THRESHOLD,
) -> Trajectory:
    """Integrate with a fixed step until ``t >= t_end`` or a failure.

    Failures truncate the trajectory and set its status; no non-finite value
    is ever stored.
    """
    if not h > 0:
        raise InvalidParameterError(f"Step size must be positive, got {h}")
    if not t_end >= h * (1.0 - 1e-12):
        raise InvalidParameterError(f"Final time {t_end} must be at least one step ({h})")

    y = as_state(y0, system.dim)
    n_steps = step_count(h, t_end)
    times = h * np.arange(n_steps + 1, dtype=np.float64)
    states = np.empty((n_steps + 1, system.dim))
    V_values = np.empty(n_steps + 1)
    states[0] = y
    V_values[0] = float(system.V(y))

    per_step: list[StepDiagnostics] = []
    status = TrajectoryStatus.COMPLETED
    failed_at: int | None = None
    is_dg = isinstance(method, DGScheme)
    f = system.vector_field

    k = 0
    for k in range(1, n_steps + 1):
        try:
            if is_dg and method.closed_form:
                z, diag = _closed_form_step(method, y, h)
            elif is_dg:
                z, diag = dg_step(method, y, h)
            else:
                with np.errstate(over="ignore", invalid="ignore"):
                    z = baseline_step(method, f, y, h)
                diag = None
        except SingularStepError as exc:
            logger.debug("%s", exc)
            status, failed_at = TrajectoryStatus.SINGULAR_STEP, k
            break
        except NonFiniteStateError:
            status, failed_at = TrajectoryStatus.BLOWUP, k
            break

        if diag is not None and diag.status is StepStatus.MAX_ITERS:
            status, failed_at = TrajectoryStatus.NEWTON_FAILURE, k
            break
        if (diag is not None and diag.status is StepStatus.NON_FINITE) or not np.all(np.isfinite(z)):
            status, failed_at = TrajectoryStatus.BLOWUP, k
            break
        if float(np.max(np.abs(z))) > blowup_threshold:
            status, failed_at = TrajectoryStatus.BLOWUP, k
            break

        v = float(system.V(z))
        if not math.isfinite(v):
            status, failed_at = TrajectoryStatus.BLOWUP, k
            break
        states[k] = z
        V_values[k] = v
        if diag is not None:
            per_step.append(diag)
        y = z

    stored = n_steps + 1 if failed_at is None else failed_at
    label = method_label(method)
    if status.failed:
        logger.warning("%s with h=%g stopped at step %d of %d: %s", label, h, failed_at, n_steps, status.value)

    return Trajectory(
        method=label,
        h=h,
        times=times[:stored].copy(),
        states=states[:stored].copy(),
        V_values=V_values[:stored].copy(),
        per_step=per_step,
        status=status,
        failed_at=failed_at,
    )


def max_lyapunov_increment(traj: Trajectory) -> float:
    """Largest one-step increase of V; +inf for blowups, -inf with no steps."""
    if traj.status is TrajectoryStatus.BLOWUP:
        return math.inf
    if traj.num_samples < 2:
        return -math.inf
    return float(np.max(np.diff(traj.V_values)))


def lyapunov_local_maxima(traj: Trajectory) -> int:
    """Count strict interior local maxima of the stored V sequence."""
    v = traj.V_values
    if v.shape[0] < 3:
        return 0
    return int(np.count_nonzero((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])))
