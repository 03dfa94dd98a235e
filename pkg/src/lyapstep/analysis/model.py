"""Shared trajectory and report models for lyapstep analysis."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from lyapstep.dgrad.scheme import StepDiagnostics

BLOWUP_THRESHOLD = 1e8


class TrajectoryStatus(Enum):
    """Terminal status of an integration."""

    COMPLETED = "completed"
    BLOWUP = "blowup"
    NEWTON_FAILURE = "newton_failure"
    SINGULAR_STEP = "singular_step"

    @property
    def failed(self) -> bool:
        return self is not TrajectoryStatus.COMPLETED


@dataclass
class Trajectory:
    """A fixed-step discrete trajectory.

    ``per_step`` is empty for baseline methods. ``failed_at`` is the index of
    the step that could not be taken (the trajectory stops before it).
    """

    method: str
    h: float
    times: np.ndarray
    states: np.ndarray
    V_values: np.ndarray
    per_step: list[StepDiagnostics] = field(default_factory=list)
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED
    failed_at: int | None = None

    @property
    def num_samples(self) -> int:
        return int(self.times.shape[0])

    @property
    def num_steps(self) -> int:
        return self.num_samples - 1

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def delta_V(self) -> np.ndarray:
        return np.diff(self.V_values)

    def status_label(self) -> str:
        if self.failed_at is None:
            return self.status.value
        return f"{self.status.value}({self.failed_at})"


@dataclass
class SweepRow:
    method: str
    h: float
    wall_time_s: float
    max_delta_V: float
    status: TrajectoryStatus
    num_steps: int = 0


@dataclass
class SweepReport:
    """One row per (method, h) cell, mirroring the Duffing comparison table."""

    rows: list[SweepRow] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def row(self, method: str, h: float) -> SweepRow | None:
        for r in self.rows:
            if r.method == method and r.h == h:
                return r
        return None

    def by_method(self, method: str) -> list[SweepRow]:
        return [r for r in self.rows if r.method == method]


@dataclass
class OrderFit:
    """Least-squares fit of log(error) against log(h)."""

    method: str
    pairs: list[tuple[float, float]]
    slope: float
    intercept: float
    residual: float
