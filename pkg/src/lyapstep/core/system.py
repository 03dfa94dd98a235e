"""Gradient-system data model: dy/dt = L(y) grad V(y)."""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from lyapstep.core.errors import DimensionMismatchError, NonFiniteStateError

StateVector = np.ndarray
SquareMatrix = np.ndarray

ScalarField = Callable[[StateVector], float]
VectorField = Callable[[StateVector], StateVector]
MatrixField = Callable[[StateVector], SquareMatrix]
ExactSolution = Callable[[float, StateVector], StateVector]


def as_state(y: Any, dim: int | None = None, *, check_finite: bool = True) -> StateVector:
    """Convert ``y`` to a float64 state vector and validate it."""
    arr = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if arr.ndim != 1:
        raise DimensionMismatchError(f"State must be one-dimensional, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(f"Expected a state of dimension {dim}, got {arr.shape[0]}")
    if check_finite and not np.all(np.isfinite(arr)):
        raise NonFiniteStateError(f"State contains non-finite values: {arr}")
    return arr


@dataclass(frozen=True)
class GradientSystem:
    """An ODE written in linear-gradient form.

    ``Lmat(y) @ gradV(y)`` is the vector field. ``rhs`` is the same field
    written directly from the ODE, when available, and is what
    :func:`verify_linear_gradient_form` checks the decomposition against.
    """

    name: str
    dim: int
    V: ScalarField
    gradV: VectorField
    Lmat: MatrixField
    exact_solution: ExactSolution | None = None
    rhs: VectorField | None = None
    equilibria: tuple[tuple[float, ...], ...] = ()
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionMismatchError(f"System dimension must be >= 1, got {self.dim}")

    def vector_field(self, y: StateVector) -> StateVector:
        return self.Lmat(y) @ self.gradV(y)


def eval_vector_field(system: GradientSystem, y: Any) -> StateVector:
    """Evaluate f(y) = L(y) grad V(y), flagging non-finite results."""
    state = as_state(y, system.dim)
    value = np.asarray(system.vector_field(state), dtype=np.float64)
    if value.shape != (system.dim,):
        raise DimensionMismatchError(
            f"{system.name}: vector field returned shape {value.shape}, expected ({system.dim},)"
        )
    if not np.all(np.isfinite(value)):
        raise NonFiniteStateError(f"{system.name}: non-finite vector field at y={state}")
    return value


@dataclass
class SampleCheck:
    """Outcome of a decomposition check at one sample point."""

    y: tuple[float, ...]
    mismatch: float
    decrease_rate: float
    passed: bool


@dataclass
class LinearGradientReport:
    """Per-sample results of :func:`verify_linear_gradient_form`."""

    system: str
    tol: float
    samples: list[SampleCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.samples)

    @property
    def failures(self) -> list[SampleCheck]:
        return [s for s in self.samples if not s.passed]


def verify_linear_gradient_form(
    system: GradientSystem,
    samples: Sequence[Any],
    tol: float = 1e-10,
) -> tuple[bool, LinearGradientReport]:
    """Check the L grad V decomposition and the decrease condition at samples.

    A sample passes when ``|f - L grad V|_inf <= tol (1 + |f|_inf)`` and
    ``grad V . f <= tol``.
    """
    report = LinearGradientReport(system=system.name, tol=tol)
    for raw in samples:
        y = as_state(raw, system.dim)
        grad = np.asarray(system.gradV(y), dtype=np.float64)
        decomposed = system.Lmat(y) @ grad
        direct = np.asarray(system.rhs(y), dtype=np.float64) if system.rhs is not None else decomposed
        mismatch = float(np.max(np.abs(direct - decomposed)))
        rate = float(grad @ direct)
        ok = (
            np.isfinite(mismatch)
            and np.isfinite(rate)
            and mismatch <= tol * (1.0 + float(np.max(np.abs(direct))))
            and rate <= tol
        )
        report.samples.append(SampleCheck(tuple(y.tolist()), mismatch, rate, bool(ok)))
    return report.passed, report


@dataclass
class GradientCheckReport:
    """Worst componentwise disagreement between grad V and finite differences."""

    system: str
    rtol: float
    max_error: float
    worst_sample: tuple[float, ...] | None

    @property
    def passed(self) -> bool:
        return self.max_error <= self.rtol


def check_gradient(
    system: GradientSystem,
    samples: Sequence[Any],
    rtol: float = 1e-6,
    step: float = 1e-6,
) -> GradientCheckReport:
    """Compare grad V with central differences of V.

    The step in coordinate i is ``step * (1 + |y_i|)``; the error is measured
    relative to ``1 + |grad V_i|``.
    """
    worst = 0.0
    worst_y: tuple[float, ...] | None = None
    for raw in samples:
        y = as_state(raw, system.dim)
        grad = np.asarray(system.gradV(y), dtype=np.float64)
        for i in range(system.dim):
            delta = step * (1.0 + abs(y[i]))
            forward = y.copy()
            backward = y.copy()
            forward[i] += delta
            backward[i] -= delta
            fd = (system.V(forward) - system.V(backward)) / (forward[i] - backward[i])
            err = abs(fd - grad[i]) / (1.0 + abs(grad[i]))
            if err > worst:
                worst = err
                worst_y = tuple(y.tolist())
    return GradientCheckReport(system=system.name, rtol=rtol, max_error=worst, worst_sample=worst_y)
