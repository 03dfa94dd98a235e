"""Itoh-Abe (coordinate increment) and 1-D quotient discrete gradients."""

from __future__ import annotations

from typing import Any

import numpy as np

from lyapstep.core.errors import NonFiniteStateError
from lyapstep.core.system import StateVector, as_state
from lyapstep.dgrad.scheme import DGScheme, GradientKind

# 3-point Gauss-Legendre rule on [0, 1]; exact for integrands of degree <= 5.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(3)
_GL_NODES = 0.5 * (_GL_NODES + 1.0)
_GL_WEIGHTS = 0.5 * _GL_WEIGHTS


def _segment_mean_partial(scheme: DGScheme, w: StateVector, i: int, target: float) -> float:
    """Mean of dV/dy_i along the segment from w to w with w_i := target."""
    start = w[i]
    point = w.copy()
    total = 0.0
    for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
        point[i] = start + node * (target - start)
        total += weight * scheme.system.gradV(point)[i]
    return total


def _value(scheme: DGScheme, y: StateVector) -> float:
    v = float(scheme.system.V(y))
    if not np.isfinite(v):
        raise NonFiniteStateError(f"{scheme.system.name}: V is not finite at {y}")
    return v


def discrete_gradient(scheme: DGScheme, y: Any, z: Any) -> StateVector:
    """Evaluate the scheme's discrete gradient at (y, z).

    Coordinate ``i`` moves along the axis-parallel path from y to z. When
    ``|z_i - y_i| <= tau (1 + |y_i|)`` the component is the partial
    derivative at the partially advanced point; inside the cancellation band
    it is the exact mean of that partial derivative over the segment;
    otherwise it is the difference quotient of V.
    """
    dim = scheme.system.dim
    y = as_state(y, dim)
    z = as_state(z, dim)
    tau = scheme.degenerate_threshold
    band = scheme.quadrature_band

    if scheme.kind.kind is GradientKind.EXACT_1D:
        path: tuple[int, ...] = (0,)
    else:
        path = scheme.kind.path(dim)

    out = np.empty(dim)
    w = y.copy()
    v_prev: float | None = None
    for i in path:
        step = z[i] - y[i]
        scale = 1.0 + abs(y[i])
        if abs(step) <= tau * scale:
            out[i] = scheme.system.gradV(w)[i]
            w[i] = z[i]
            v_prev = None
        elif abs(step) <= band * scale:
            out[i] = _segment_mean_partial(scheme, w, i, z[i])
            w[i] = z[i]
            v_prev = None
        else:
            if v_prev is None:
                v_prev = _value(scheme, w)
            w[i] = z[i]
            v_next = _value(scheme, w)
            out[i] = (v_next - v_prev) / step
            v_prev = v_next

    if not np.all(np.isfinite(out)):
        raise NonFiniteStateError(f"{scheme.system.name}: non-finite discrete gradient at y={y}, z={z}")
    return out
