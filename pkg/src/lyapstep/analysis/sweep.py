"""Timed (method, h) sweeps for the cost and Lyapunov comparison table."""

from __future__ import annotations

import logging
import math
import os
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from lyapstep import __version__
from lyapstep.analysis.integrate import integrate, max_lyapunov_increment
from lyapstep.analysis.model import SweepReport, SweepRow, Trajectory
from lyapstep.core.errors import InvalidParameterError

if TYPE_CHECKING:
    from lyapstep.methods import MethodPreset
    from lyapstep.problems.catalog import ProblemSpec

logger = logging.getLogger(__name__)

DEFAULT_REPEATS = 3


def default_thread_count() -> int:
    return os.cpu_count() or 1


def _timed_cell(preset: MethodPreset, y0: np.ndarray, h: float, t_end: float, repeats: int) -> tuple[float, Trajectory]:
    best = math.inf
    traj: Trajectory | None = None
    for _ in range(repeats):
        start = time.perf_counter()
        traj = integrate(preset.method, preset.system, y0, h, t_end)
        best = min(best, time.perf_counter() - start)
    assert traj is not None
    return best, traj


def run_sweep(
    problem: ProblemSpec,
    methods: Sequence[MethodPreset],
    h_list: Sequence[float],
    t_end: float,
    repeats: int = DEFAULT_REPEATS,
    *,
    threads: int | None = None,
    y0: Any = None,
) -> SweepReport:
    """Integrate every (method, h) cell and time it.

    Cells are first integrated untimed on ``threads`` workers. The timed runs
    then execute one cell at a time on the calling thread, so no measurement
    shares the interpreter with another integration. Wall time is the minimum
    over ``repeats`` runs; ``max_delta_V`` and status come from the timed
    trajectory. Rows are in (method, h) input order.
    """
    if not methods or not h_list:
        raise InvalidParameterError("A sweep needs at least one method and one step size")
    if repeats < 1:
        raise InvalidParameterError(f"repeats must be >= 1, got {repeats}")
    threads = default_thread_count() if threads is None else threads
    if threads < 1:
        raise InvalidParameterError(f"threads must be >= 1, got {threads}")
    start_state = problem.default_y0 if y0 is None else np.asarray(y0, dtype=np.float64)

    cells = [(preset, float(h)) for preset in methods for h in h_list]

    def untimed(cell: tuple[MethodPreset, float]) -> Trajectory:
        preset, h = cell
        return integrate(preset.method, preset.system, start_state, h, t_end)

    with ThreadPoolExecutor(max_workers=min(threads, len(cells))) as pool:
        previews = list(pool.map(untimed, cells))

    rows = []
    for (preset, h), preview in zip(cells, previews):
        wall, traj = _timed_cell(preset, start_state, h, t_end, repeats)
        row = SweepRow(
            method=preset.name,
            h=h,
            wall_time_s=wall,
            max_delta_V=max_lyapunov_increment(traj),
            status=traj.status,
            num_steps=traj.num_steps,
        )
        if traj.status is not preview.status or traj.num_steps != preview.num_steps:
            logger.warning(
                "%s h=%g: timed run ended %s but the untimed run ended %s",
                row.method, h, traj.status_label(), preview.status_label(),
            )
        logger.info(
            "%s h=%g: %s in %.3fs, max dV=%.3e", row.method, h, traj.status_label(), wall, row.max_delta_V
        )
        rows.append(row)

    metadata = {
        "problem": problem.kind.value,
        "parameters": problem.parameters,
        "y0": [float(v) for v in start_state],
        "t_end": t_end,
        "repeats": repeats,
        "threads": threads,
        "version": __version__,
    }
    return SweepReport(rows=rows, metadata=metadata)


@dataclass(frozen=True)
class CostOrdering:
    """Whether DG is cheaper than rk4 and ros2 at one step size."""

    h: float
    times: dict[str, float]
    holds: bool


def cost_ordering(report: SweepReport, h: float) -> CostOrdering | None:
    """Compare wall times at ``h``; ``None`` if a needed row is missing."""
    times: dict[str, float] = {}
    for name in ("dg", "rk4", "ros2"):
        row = report.row(name, h)
        if row is None:
            return None
        times[name] = row.wall_time_s
    holds = times["dg"] < times["rk4"] and times["dg"] < times["ros2"]
    if not holds:
        logger.warning("At h=%g dg is not the cheapest method: %s", h, times)
    return CostOrdering(h=h, times=times, holds=holds)
