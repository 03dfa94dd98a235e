"""Integration driver, error measurement, order fits and timing sweeps."""

from lyapstep.analysis.model import (
    BLOWUP_THRESHOLD,
    OrderFit,
    SweepReport,
    SweepRow,
    Trajectory,
    TrajectoryStatus,
)
from lyapstep.analysis.integrate import (
    integrate,
    lyapunov_local_maxima,
    max_lyapunov_increment,
    step_count,
)
from lyapstep.analysis.accuracy import global_error
from lyapstep.analysis.order import MIN_PAIRS, fit_order, log_spaced_steps, snap_to_multiples
from lyapstep.analysis.sweep import CostOrdering, cost_ordering, run_sweep

__all__ = [
    "BLOWUP_THRESHOLD",
    "MIN_PAIRS",
    "CostOrdering",
    "OrderFit",
    "SweepReport",
    "SweepRow",
    "Trajectory",
    "TrajectoryStatus",
    "cost_ordering",
    "fit_order",
    "global_error",
    "integrate",
    "log_spaced_steps",
    "lyapunov_local_maxima",
    "max_lyapunov_increment",
    "run_sweep",
    "snap_to_multiples",
    "step_count",
]
