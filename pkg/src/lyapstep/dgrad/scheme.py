"""Configuration types for discrete gradient schemes."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from lyapstep.core.errors import DimensionMismatchError, InvalidParameterError, NonQuadraticLyapunovError
from lyapstep.core.system import GradientSystem, SquareMatrix, StateVector

SQRT_EPS = float(np.sqrt(np.finfo(np.float64).eps))


class GradientKind(Enum):
    ITOH_ABE = "itoh_abe"
    EXACT_1D = "exact_1d"


@dataclass(frozen=True)
class DiscreteGradientKind:
    """Which discrete gradient to use.

    ``ordering`` is the 0-based coordinate order of the Itoh-Abe path;
    ``None`` means the natural order.
    """

    kind: GradientKind = GradientKind.ITOH_ABE
    ordering: tuple[int, ...] | None = None

    @classmethod
    def itoh_abe(cls, ordering: tuple[int, ...] | None = None) -> DiscreteGradientKind:
        return cls(GradientKind.ITOH_ABE, ordering)

    @classmethod
    def exact_1d(cls) -> DiscreteGradientKind:
        return cls(GradientKind.EXACT_1D)

    def path(self, dim: int) -> tuple[int, ...]:
        return self.ordering if self.ordering is not None else tuple(range(dim))


class LtildeRule(Enum):
    """Discrete approximation of L; both satisfy L~(y, y) = L(y)."""

    FROZEN = "frozen"
    MIDPOINT = "midpoint"

    def evaluate(self, system: GradientSystem, y: StateVector, z: StateVector) -> SquareMatrix:
        if self is LtildeRule.FROZEN:
            return system.Lmat(y)
        return system.Lmat(0.5 * (y + z))


class Predictor(Enum):
    IDENTITY = "identity"
    EULER = "euler"


@dataclass(frozen=True)
class NewtonConfig:
    """Settings for the Newton solve of the implicit step.

    ``fd_jacobian_step`` scales the forward-difference step
    ``fd_jacobian_step * (1 + |z_j|)``.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_iters: int = 50
    fd_jacobian_step: float = SQRT_EPS
    predictor: Predictor = Predictor.EULER

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InvalidParameterError("Newton tolerances must be positive")
        if self.max_iters < 1:
            raise InvalidParameterError("Newton max_iters must be >= 1")
        if not self.fd_jacobian_step > 0:
            raise InvalidParameterError("Finite-difference step must be positive")

    def tolerance(self, y: StateVector) -> float:
        return self.abs_tol + self.rel_tol * float(np.max(np.abs(y)))


@dataclass(frozen=True)
class DGScheme:
    """A discrete gradient method: one implicit map per (y, h).

    ``quadrature_band`` is the relative coordinate increment below which
    coordinate quotients are evaluated as a Gauss-Legendre line integral of
    the partial derivative instead of a raw difference quotient.
    ``closed_form`` routes :func:`integrate` through the explicit 1-D path.
    """

    system: GradientSystem
    kind: DiscreteGradientKind = field(default_factory=DiscreteGradientKind)
    ltilde: LtildeRule = LtildeRule.FROZEN
    newton: NewtonConfig = field(default_factory=NewtonConfig)
    degenerate_threshold: float = 1e-12
    quadrature_band: float = 1e-3
    closed_form: bool = False
    label: str = "dg"

    def __post_init__(self) -> None:
        dim = self.system.dim
        if self.kind.kind is GradientKind.EXACT_1D and dim != 1:
            raise DimensionMismatchError(f"exact_1d discrete gradient needs dim 1, system has dim {dim}")
        if self.kind.ordering is not None and sorted(self.kind.ordering) != list(range(dim)):
            raise InvalidParameterError(f"Ordering {self.kind.ordering} is not a permutation of 0..{dim - 1}")
        if self.degenerate_threshold < 0 or self.quadrature_band < self.degenerate_threshold:
            raise InvalidParameterError("Need 0 <= degenerate_threshold <= quadrature_band")
        if self.closed_form:
            validate_closed_form(self)


class StepStatus(Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    NON_FINITE = "non_finite"


@dataclass(frozen=True)
class StepDiagnostics:
    newton_iters: int
    residual_norm: float
    delta_V: float
    status: StepStatus


def default_scheme(system: GradientSystem, **overrides) -> DGScheme:
    """Itoh-Abe for n > 1, the exact quotient for n = 1."""
    kind = DiscreteGradientKind.exact_1d() if system.dim == 1 else DiscreteGradientKind.itoh_abe()
    overrides.setdefault("kind", kind)
    return DGScheme(system=system, **overrides)


_QUADRATIC_SAMPLE_POINTS = (-1.0, 0.0, 0.5, 1.0, 2.0)
_QUADRATIC_SPACING = 0.5
_QUADRATIC_RTOL = 1e-8


def is_quadratic_1d(system: GradientSystem) -> bool:
    """Sampled test that the third difference of V vanishes."""
    d = _QUADRATIC_SPACING
    for x in _QUADRATIC_SAMPLE_POINTS:
        values = [float(system.V(np.array([x + k * d]))) for k in (-1, 0, 1, 2)]
        third = values[3] - 3.0 * values[2] + 3.0 * values[1] - values[0]
        if abs(third) > _QUADRATIC_RTOL * (1.0 + sum(abs(v) for v in values)):
            return False
    return True


def validate_closed_form(scheme: DGScheme) -> None:
    """Raise unless the scheme admits the explicit 1-D step."""
    if scheme.system.dim != 1:
        raise DimensionMismatchError("The closed-form step exists only for one-dimensional systems")
    if scheme.ltilde is not LtildeRule.FROZEN:
        raise InvalidParameterError("The closed-form step requires the frozen L~ rule")
    if not is_quadratic_1d(scheme.system):
        raise NonQuadraticLyapunovError(f"{scheme.system.name}: V is not quadratic")
