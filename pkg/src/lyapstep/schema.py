"""Output file names and CSV layouts."""

TRAJ_CSV = "traj.csv"
TRAJ_SVG = "traj.svg"
TRAJ_META = "traj.meta.json"

SWEEP_CSV = "sweep.csv"
SWEEP_META = "sweep.meta.json"
COST_SVG = "cost.svg"

ORDER_CSV = "order.csv"
ORDER_FIT_CSV = "order_fit.csv"
ORDER_META = "order.meta.json"
ORDER_SVG = "order.svg"

PHASE_SVG = "phase.svg"
PHASE_META = "phase.meta.json"
LYAPUNOV_SVG = "lyapunov.svg"

COMPARE_CSV = "compare.csv"
COMPARE_META = "compare.meta.json"
COMPARE_SVG = "compare.svg"

SWEEP_HEADER = ("method", "h", "wall_time_s", "max_delta_V", "status")
ORDER_HEADER = ("method", "h", "global_error")
ORDER_FIT_HEADER = ("method", "slope", "intercept", "residual")
PHASE_HEADER = ("t", "y1", "y2", "V")
COMPARE_HEADER = ("method", "h", "t", "y", "exact")

# Per-row status markers in traj.csv; the last row carries the trajectory status.
ROW_START = "start"
ROW_OK = "ok"


def traj_header(dim: int) -> tuple[str, ...]:
    return ("t", *(f"y{i}" for i in range(1, dim + 1)), "V", "delta_V", "newton_iters", "status")


def phase_csv(method: str) -> str:
    return f"phase_{method}.csv"
