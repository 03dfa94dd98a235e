"""Static SVG figures."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from lyapstep.analysis.accuracy import ExactTruth  # noqa: E402
from lyapstep.analysis.model import OrderFit, SweepReport, Trajectory  # noqa: E402


MAX_PLOT_POINTS = 20_000


def _thin(values: np.ndarray) -> np.ndarray:
    step = max(1, len(values) // MAX_PLOT_POINTS)
    return values[::step]


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    return path


def plot_trajectory(traj: Trajectory, path: Path) -> Path:
    """Components and V against t, stacked."""
    fig, (ax_y, ax_v) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))
    for i in range(traj.states.shape[1]):
        ax_y.plot(_thin(traj.times), _thin(traj.states[:, i]), label=f"y{i + 1}")
    ax_y.set_ylabel("y")
    ax_y.grid(True)
    ax_y.legend()
    ax_v.plot(_thin(traj.times), _thin(traj.V_values), color="k")
    ax_v.set_xlabel("t")
    ax_v.set_ylabel("V")
    ax_v.grid(True)
    ax_y.set_title(f"{traj.method}, h = {traj.h:g} ({traj.status_label()})")
    return _save(fig, path)


def plot_cost(report: SweepReport, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 5))
    for method in dict.fromkeys(r.method for r in report.rows):
        rows = sorted(report.by_method(method), key=lambda r: r.h)
        ax.loglog([r.h for r in rows], [r.wall_time_s for r in rows], "o-", label=method)
    ax.set_xlabel("h")
    ax.set_ylabel("wall time [s]")
    ax.set_title("Computational cost")
    ax.grid(True, which="both")
    ax.legend()
    return _save(fig, path)


def plot_order(fits: Sequence[OrderFit], path: Path) -> Path:
    """Global error against h with reference lines of slope 1 and 2."""
    fig, ax = plt.subplots(figsize=(7, 6))
    all_h: list[float] = []
    anchor = None
    for fit in fits:
        h = np.array([p[0] for p in fit.pairs])
        err = np.array([p[1] for p in fit.pairs])
        ax.loglog(h, err, "o", label=f"{fit.method} (slope {fit.slope:.2f})")
        all_h.extend(h.tolist())
        if anchor is None:
            anchor = (float(h.max()), float(err[np.argmax(h)]))
    if anchor is not None:
        grid = np.geomspace(min(all_h), max(all_h), 50)
        h0, e0 = anchor
        ax.loglog(grid, e0 * (grid / h0), "k--", linewidth=1, label="slope 1")
        ax.loglog(grid, e0 * (grid / h0) ** 2, "k:", linewidth=1, label="slope 2")
    ax.set_xlabel("h")
    ax.set_ylabel("global error")
    ax.grid(True)
    ax.legend(loc="upper left")
    return _save(fig, path)


def plot_phase(trajectories: Sequence[Trajectory], path: Path, reference: Trajectory | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(7, 6))
    if reference is not None:
        states = _thin(reference.states)
        ax.plot(states[:, 0], states[:, 1], color="0.6", linewidth=2, label="reference")
    for traj in trajectories:
        states = _thin(traj.states)
        ax.plot(states[:, 0], states[:, 1], label=traj.method)
        ax.plot(traj.states[-1, 0], traj.states[-1, 1], "o", color=ax.lines[-1].get_color())
    ax.set_xlabel("y1")
    ax.set_ylabel("y2")
    ax.set_title(f"Phase portrait, h = {trajectories[0].h:g}" if trajectories else "Phase portrait")
    ax.grid(True)
    ax.legend()
    return _save(fig, path)


def plot_lyapunov(trajectories: Sequence[Trajectory], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for traj in trajectories:
        ax.plot(_thin(traj.times), _thin(traj.V_values), label=traj.method)
    ax.set_xlabel("t")
    ax.set_ylabel("V")
    ax.set_title("Lyapunov function along the trajectory")
    ax.grid(True)
    ax.legend()
    return _save(fig, path)


def plot_comparison(trajectories: Sequence[Trajectory], exact: ExactTruth, path: Path) -> Path:
    """One panel per step size overlaying scalar trajectories on the exact solution.

    The y range follows the exact curve so that a diverging method leaves the
    panel instead of flattening it.
    """
    steps = sorted(dict.fromkeys(traj.h for traj in trajectories))
    fig, axes = plt.subplots(1, max(1, len(steps)), figsize=(6 * max(1, len(steps)), 4.5), squeeze=False)
    for ax, h in zip(axes[0], steps):
        panel = [traj for traj in trajectories if traj.h == h]
        t_end = max(float(traj.times[-1]) for traj in panel)
        y0 = panel[0].states[0]
        grid = np.linspace(0.0, t_end, 400)
        truth = np.array([float(np.asarray(exact(float(t), y0)).reshape(-1)[0]) for t in grid])
        ax.plot(grid, truth, color="k", linewidth=2, label="exact")
        for traj in panel:
            label = traj.method if not traj.status.failed else f"{traj.method} ({traj.status_label()})"
            ax.plot(_thin(traj.times), _thin(traj.states[:, 0]), "o-", markersize=3, linewidth=1, label=label)
        low, high = float(truth.min()), float(truth.max())
        pad = 0.25 * (high - low) + 0.1
        ax.set_ylim(low - pad, high + pad)
        ax.set_xlabel("t")
        ax.set_ylabel("y")
        ax.set_title(f"h = {h:g}")
        ax.grid(True)
        ax.legend()
    return _save(fig, path)
