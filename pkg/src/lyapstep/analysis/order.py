"""Empirical convergence order from (h, error) pairs."""

from __future__ import annotations

import math
from collections.abc import Iterable

import numpy as np

from lyapstep.analysis.model import OrderFit
from lyapstep.core.errors import DegenerateFitError, InvalidParameterError

MIN_PAIRS = 5


def log_spaced_steps(h_min: float = 1e-6, h_max: float = 1e-4, count: int = 20) -> list[float]:
    """Logarithmically spaced step sizes from ``h_max`` down to ``h_min``."""
    if not 0 < h_min <= h_max:
        raise InvalidParameterError(f"Need 0 < h_min <= h_max, got [{h_min}, {h_max}]")
    if count < 1:
        raise InvalidParameterError(f"Need at least one step size, got {count}")
    return [float(h) for h in np.geomspace(h_max, h_min, count)]


def fit_order(pairs: Iterable[tuple[float, float]], method: str = "") -> OrderFit:
    """Least-squares line through ``(log h, log error)``.

    The slope is the observed order; ``residual`` is the RMS of the fit in
    log space.
    """
    pairs = [(float(h), float(e)) for h, e in pairs]
    if len(pairs) < MIN_PAIRS:
        raise DegenerateFitError(f"{method or 'fit'}: need at least {MIN_PAIRS} pairs, got {len(pairs)}")
    bad = [(h, e) for h, e in pairs if not (h > 0 and e > 0 and math.isfinite(h) and math.isfinite(e))]
    if bad:
        raise DegenerateFitError(f"{method or 'fit'}: step sizes and errors must be finite and positive: {bad[:3]}")

    log_h = np.log([h for h, _ in pairs])
    log_e = np.log([e for _, e in pairs])
    if np.ptp(log_h) == 0.0:
        raise DegenerateFitError(f"{method or 'fit'}: all step sizes are equal")

    slope, intercept = np.polyfit(log_h, log_e, 1)
    residual = float(np.sqrt(np.mean((log_e - (slope * log_h + intercept)) ** 2)))
    return OrderFit(method=method, pairs=pairs, slope=float(slope), intercept=float(intercept), residual=residual)


def snap_to_multiples(steps: Iterable[float], unit: float) -> list[float]:
    """Round each step to the nearest positive multiple of ``unit``, dropping duplicates."""
    if not unit > 0:
        raise InvalidParameterError(f"Grid unit must be positive, got {unit}")
    snapped: list[float] = []
    for h in steps:
        value = max(1, round(h / unit)) * unit
        if value not in snapped:
            snapped.append(value)
    return snapped
