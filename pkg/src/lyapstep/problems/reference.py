"""High-resolution explicit Euler reference trajectories."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from lyapstep.analysis.model import BLOWUP_THRESHOLD, Trajectory, TrajectoryStatus
from lyapstep.core.errors import InvalidParameterError, ReferenceBlowupError
from lyapstep.core.system import GradientSystem, StateVector, as_state

logger = logging.getLogger(__name__)

DEFAULT_H_REF = 1e-8
MAX_STORED_SAMPLES = 1_000_000


@dataclass
class ReferenceTrajectory:
    """Euler micro-steps of size ``h_ref``, stored every ``stride`` steps."""

    h_ref: float
    samples: Trajectory
    stride: int

    @property
    def sample_spacing(self) -> float:
        return self.h_ref * self.stride

    @property
    def final_time(self) -> float:
        return float(self.samples.times[-1])

    def state_at(self, index: int) -> StateVector:
        return self.samples.states[index]


def reference_step_count(t_end: float, h_ref: float) -> int:
    """Micro-steps needed to cover ``[0, t_end]``; zero when ``t_end == 0``."""
    if t_end == 0:
        return 0
    return math.ceil(t_end / h_ref * (1.0 - 1e-12))


def reference_trajectory(
    system: GradientSystem,
    y0: Any,
    t_end: float,
    h_ref: float = DEFAULT_H_REF,
    stride: int | None = None,
) -> ReferenceTrajectory:
    """Integrate with explicit Euler at a tiny step and keep every ``stride``-th state.

    The step count is rounded up to a multiple of the stride so the stored
    grid always reaches ``t_end``.
    """
    if not h_ref > 0:
        raise InvalidParameterError(f"Reference step must be positive, got {h_ref}")
    if not t_end >= 0:
        raise InvalidParameterError(f"Final time must be non-negative, got {t_end}")
    y = as_state(y0, system.dim)

    micro_steps = reference_step_count(t_end, h_ref)
    if stride is None:
        stride = max(1, math.ceil(micro_steps / MAX_STORED_SAMPLES))
    if stride < 1:
        raise InvalidParameterError(f"Reference stride must be >= 1, got {stride}")
    stored = math.ceil(micro_steps / stride)
    micro_steps = stored * stride

    states = np.empty((stored + 1, system.dim))
    states[0] = y
    f = system.vector_field
    for k in range(1, micro_steps + 1):
        y = y + h_ref * f(y)
        if k % stride == 0:
            if not np.all(np.isfinite(y)) or float(np.max(np.abs(y))) > BLOWUP_THRESHOLD:
                raise ReferenceBlowupError(
                    f"{system.name}: reference trajectory blew up at t={k * h_ref:g} (h_ref={h_ref:g})"
                )
            states[k // stride] = y

    if not np.all(np.isfinite(states[-1])):
        raise ReferenceBlowupError(f"{system.name}: reference trajectory is not finite at t={t_end:g}")

    logger.debug("Reference for %s: %d micro-steps, %d stored samples", system.name, micro_steps, stored + 1)
    times = (h_ref * stride) * np.arange(stored + 1, dtype=np.float64)
    V_values = np.array([float(system.V(s)) for s in states])
    samples = Trajectory(
        method="reference",
        h=h_ref * stride,
        times=times,
        states=states,
        V_values=V_values,
        status=TrajectoryStatus.COMPLETED,
    )
    return ReferenceTrajectory(h_ref=h_ref, samples=samples, stride=stride)
