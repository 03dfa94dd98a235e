"""Fixed-step reference integrators: explicit Euler, classical RK4 and a
two-stage linearly implicit (Rosenbrock-type) stiff scheme.

The stiff scheme is the autonomous form of the second-order W-method with
``d = 1 / (2 + sqrt(2))``::

    W  = I - h d J,          J = forward-difference Jacobian of f at y
    k1 = W^-1 f(y)
    F1 = f(y + h k1 / 2)
    k2 = W^-1 (F1 - k1) + k1
    z  = y + h k2

One LU factorization of W is reused for both stages.
"""

from __future__ import annotations

import warnings
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from lyapstep.core.errors import InvalidParameterError, NonFiniteStateError, SingularStepError
from lyapstep.core.system import StateVector, as_state

ROS2_DAMPING = 1.0 / (2.0 + np.sqrt(2.0))
_SQRT_EPS = float(np.sqrt(np.finfo(np.float64).eps))

VectorField = Callable[[StateVector], StateVector]


class BaselineKind(Enum):
    EULER = "euler"
    RK4 = "rk4"
    ROS2 = "ros2"


_ORDERS = {BaselineKind.EULER: 1, BaselineKind.RK4: 4, BaselineKind.ROS2: 2}


@dataclass(frozen=True)
class BaselineMethod:
    kind: BaselineKind
    d: float = ROS2_DAMPING

    def __post_init__(self) -> None:
        if self.kind is BaselineKind.ROS2 and not self.d > 0:
            raise InvalidParameterError(f"ros2 damping parameter must be positive, got {self.d}")

    @classmethod
    def euler(cls) -> BaselineMethod:
        return cls(BaselineKind.EULER)

    @classmethod
    def rk4(cls) -> BaselineMethod:
        return cls(BaselineKind.RK4)

    @classmethod
    def ros2(cls, d: float = ROS2_DAMPING) -> BaselineMethod:
        return cls(BaselineKind.ROS2, d)

    @property
    def label(self) -> str:
        return self.kind.value

    @property
    def order(self) -> int:
        return _ORDERS[self.kind]


def fd_jacobian(f: VectorField, y: StateVector, fy: StateVector | None = None) -> np.ndarray:
    """Forward-difference Jacobian with step sqrt(eps) (1 + |y_j|)."""
    base = f(y) if fy is None else fy
    n = y.shape[0]
    jac = np.empty((n, n))
    for j in range(n):
        shifted = y.copy()
        shifted[j] += _SQRT_EPS * (1.0 + abs(y[j]))
        jac[:, j] = (f(shifted) - base) / (shifted[j] - y[j])
    return jac


def _euler(f: VectorField, y: StateVector, h: float) -> StateVector:
    return y + h * f(y)


def _rk4(f: VectorField, y: StateVector, h: float) -> StateVector:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _ros2(f: VectorField, y: StateVector, h: float, d: float) -> StateVector:
    fy = f(y)
    jac = fd_jacobian(f, y, fy)
    w = np.eye(y.shape[0]) - h * d * jac
    if not np.all(np.isfinite(w)):
        raise NonFiniteStateError(f"ros2: non-finite iteration matrix at y={y}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu = lu_factor(w, check_finite=False)
    if np.any(np.diag(lu[0]) == 0.0):
        raise SingularStepError(f"ros2: singular iteration matrix at y={y}, h={h}")
    k1 = lu_solve(lu, fy, check_finite=False)
    f1 = f(y + 0.5 * h * k1)
    k2 = lu_solve(lu, f1 - k1, check_finite=False) + k1
    return y + h * k2


def baseline_step(method: BaselineMethod, f: VectorField, y: Any, h: float) -> StateVector:
    """One fixed step of a baseline method.

    Non-finite stage values are returned as-is for the caller to classify;
    only a singular iteration matrix raises.
    """
    if not h > 0:
        raise InvalidParameterError(f"Step size must be positive, got {h}")
    y = as_state(y)
    if method.kind is BaselineKind.EULER:
        return _euler(f, y, h)
    if method.kind is BaselineKind.RK4:
        return _rk4(f, y, h)
    with np.errstate(over="ignore", invalid="ignore"):
        return _ros2(f, y, h, method.d)
