"""Global error against an exact solution or a reference trajectory."""

from __future__ import annotations

from collections.abc import Callable
from typing import TYPE_CHECKING

import numpy as np

from lyapstep.analysis.model import Trajectory
from lyapstep.core.errors import GridMismatchError, InvalidParameterError

if TYPE_CHECKING:
    from lyapstep.problems.reference import ReferenceTrajectory

ExactTruth = Callable[[float, np.ndarray], np.ndarray]

_GRID_RTOL = 1e-9


def _reference_indices(traj: Trajectory, reference: ReferenceTrajectory) -> np.ndarray:
    ratio = traj.h / reference.sample_spacing
    stride = round(ratio)
    if stride < 1 or abs(ratio - stride) > _GRID_RTOL * ratio:
        raise GridMismatchError(
            f"Trajectory step {traj.h:g} is not a multiple of the reference spacing {reference.sample_spacing:g}"
        )
    indices = stride * np.arange(traj.num_samples)
    if indices[-1] >= reference.samples.num_samples:
        raise GridMismatchError(
            f"Reference ends at t={reference.final_time:g}, trajectory reaches t={traj.times[-1]:g}"
        )
    return indices


def global_error(traj: Trajectory, truth: ExactTruth | ReferenceTrajectory) -> float:
    """Mean over stored samples of the infinity-norm deviation from ``truth``.

    ``truth`` is either ``exact(t, y0)`` or a reference whose stored spacing
    divides ``traj.h``.
    """
    if traj.num_samples == 0:
        raise InvalidParameterError("Cannot measure the error of an empty trajectory")
    if callable(truth):
        y0 = traj.states[0]
        expected = np.array([np.asarray(truth(float(t), y0), dtype=np.float64) for t in traj.times])
    else:
        expected = truth.samples.states[_reference_indices(traj, truth)]
    deviation = np.max(np.abs(traj.states - expected.reshape(traj.states.shape)), axis=1)
    return float(np.mean(deviation))
