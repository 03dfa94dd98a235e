"""CSV and JSON writers for experiment results."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
from pydantic import BaseModel

from lyapstep import schema
from lyapstep.analysis.accuracy import ExactTruth
from lyapstep.analysis.model import OrderFit, SweepReport, Trajectory


def format_number(value: float | int | None) -> str:
    """17 significant digits so that values re-read exactly."""
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(float(value), ".17g")


def atomic_write_text(path: Path, text: str) -> None:
    """Write to a temporary file in the same directory, then rename over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


class ExperimentWriter:
    """Writes the files of one experiment into an output directory."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        target = self.path(name)
        atomic_write_text(target, buffer.getvalue())
        return target

    def write_meta(self, name: str, meta: BaseModel) -> Path:
        target = self.path(name)
        atomic_write_text(target, meta.model_dump_json(indent=2) + "\n")
        return target

    def write_trajectory(self, traj: Trajectory, name: str = schema.TRAJ_CSV) -> Path:
        """One row per stored sample.

        ``delta_V`` and ``newton_iters`` describe the step that produced the
        row and are blank on the first row (and ``newton_iters`` always for
        baselines). The last row's status is the trajectory status.
        """
        dim = traj.states.shape[1]
        last = traj.num_samples - 1
        rows = []
        for k in range(traj.num_samples):
            delta = format_number(traj.V_values[k] - traj.V_values[k - 1]) if k > 0 else ""
            iters = ""
            if k > 0 and k - 1 < len(traj.per_step):
                iters = str(traj.per_step[k - 1].newton_iters)
            if k == last:
                status = traj.status_label()
            else:
                status = schema.ROW_START if k == 0 else schema.ROW_OK
            rows.append(
                [
                    format_number(traj.times[k]),
                    *(format_number(v) for v in traj.states[k]),
                    format_number(traj.V_values[k]),
                    delta,
                    iters,
                    status,
                ]
            )
        return self.write_csv(name, schema.traj_header(dim), rows)

    def write_sweep(self, report: SweepReport) -> Path:
        rows = [
            [r.method, format_number(r.h), format_number(r.wall_time_s), format_number(r.max_delta_V), r.status.value]
            for r in report.rows
        ]
        return self.write_csv(schema.SWEEP_CSV, schema.SWEEP_HEADER, rows)

    def write_order(self, pairs: dict[str, list[tuple[float, float]]], fits: Sequence[OrderFit]) -> tuple[Path, Path]:
        error_rows = [
            [method, format_number(h), format_number(err)] for method, items in pairs.items() for h, err in items
        ]
        fit_rows = [
            [fit.method, format_number(fit.slope), format_number(fit.intercept), format_number(fit.residual)]
            for fit in fits
        ]
        return (
            self.write_csv(schema.ORDER_CSV, schema.ORDER_HEADER, error_rows),
            self.write_csv(schema.ORDER_FIT_CSV, schema.ORDER_FIT_HEADER, fit_rows),
        )

    def write_phase(self, traj: Trajectory) -> Path:
        rows = [
            [format_number(t), format_number(s[0]), format_number(s[1]), format_number(v)]
            for t, s, v in zip(traj.times, traj.states, traj.V_values)
        ]
        return self.write_csv(schema.phase_csv(traj.method), schema.PHASE_HEADER, rows)

    def write_comparison(self, trajectories: Sequence[Trajectory], exact: ExactTruth) -> Path:
        """Scalar trajectories next to the exact solution at the same times."""
        rows = []
        for traj in trajectories:
            y0 = traj.states[0]
            for t, state in zip(traj.times, traj.states):
                truth = float(np.asarray(exact(float(t), y0)).reshape(-1)[0])
                rows.append(
                    [traj.method, format_number(traj.h), format_number(t), format_number(state[0]), format_number(truth)]
                )
        return self.write_csv(schema.COMPARE_CSV, schema.COMPARE_HEADER, rows)
