"""Bundled benchmark systems in linear-gradient form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from lyapstep.core.errors import InvalidParameterError, UnsupportedProblemError
from lyapstep.core.system import GradientSystem, StateVector, as_state


class ProblemKind(Enum):
    LINEAR = "linear"
    LOGISTIC_V1 = "logistic-v1"
    LOGISTIC_V2 = "logistic-v2"
    DUFFING = "duffing"

    @property
    def is_logistic(self) -> bool:
        return self in (ProblemKind.LOGISTIC_V1, ProblemKind.LOGISTIC_V2)


DEFAULT_A = 1000.0
DEFAULT_B = 1.0

_DEFAULT_Y0 = {
    ProblemKind.LINEAR: (5.0,),
    ProblemKind.LOGISTIC_V1: (5.0,),
    ProblemKind.LOGISTIC_V2: (5.0,),
    ProblemKind.DUFFING: (0.3, 0.0),
}

_DEFAULT_T_END = {
    ProblemKind.LINEAR: 0.01,
    ProblemKind.LOGISTIC_V1: 0.05,
    ProblemKind.LOGISTIC_V2: 0.05,
    ProblemKind.DUFFING: 10.0,
}

# Open boxes in which V certifies decrease; used for sampling and checks.
_REGIONS = {
    ProblemKind.LINEAR: ((-10.0,), (10.0,), "any real y"),
    ProblemKind.LOGISTIC_V1: ((0.0,), (2.0,), "0 < y < 2 (V decreases only for y > 0)"),
    ProblemKind.LOGISTIC_V2: ((-1.0,), (3.0,), "-1 < y < 3 (dV/dt <= 0 for all y)"),
    ProblemKind.DUFFING: ((-2.0, -2.0), (2.0, 2.0), "[-2, 2] x [-2, 2]"),
}


@dataclass(frozen=True)
class ProblemSpec:
    """A benchmark problem and its parameters."""

    kind: ProblemKind
    a: float = DEFAULT_A
    b: float = DEFAULT_B
    y0: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not (self.a > 0 and math.isfinite(self.a)):
            raise InvalidParameterError(f"{self.kind.value}: parameter a must be positive, got {self.a}")
        if self.kind is ProblemKind.DUFFING and (self.b == 0 or not math.isfinite(self.b)):
            raise InvalidParameterError(f"duffing: parameter b must be non-zero, got {self.b}")
        if self.y0 is not None and len(self.y0) != self.dim:
            raise InvalidParameterError(
                f"{self.kind.value}: initial value needs {self.dim} components, got {len(self.y0)}"
            )

    @classmethod
    def linear(cls, a: float = DEFAULT_A) -> ProblemSpec:
        return cls(ProblemKind.LINEAR, a=a)

    @classmethod
    def logistic_v1(cls, a: float = DEFAULT_A) -> ProblemSpec:
        return cls(ProblemKind.LOGISTIC_V1, a=a)

    @classmethod
    def logistic_v2(cls, a: float = DEFAULT_A) -> ProblemSpec:
        return cls(ProblemKind.LOGISTIC_V2, a=a)

    @classmethod
    def duffing(cls, a: float = DEFAULT_A, b: float = DEFAULT_B) -> ProblemSpec:
        return cls(ProblemKind.DUFFING, a=a, b=b)

    @property
    def dim(self) -> int:
        return 2 if self.kind is ProblemKind.DUFFING else 1

    @property
    def default_y0(self) -> StateVector:
        return np.array(self.y0 if self.y0 is not None else _DEFAULT_Y0[self.kind], dtype=np.float64)

    @property
    def default_t_end(self) -> float:
        return _DEFAULT_T_END[self.kind]

    @property
    def has_exact_solution(self) -> bool:
        return self.kind is not ProblemKind.DUFFING

    @property
    def validity_region(self) -> str:
        return _REGIONS[self.kind][2]

    @property
    def region_bounds(self) -> tuple[StateVector, StateVector]:
        lower, upper, _ = _REGIONS[self.kind]
        return np.array(lower), np.array(upper)

    @property
    def parameters(self) -> dict[str, float]:
        params = {"a": self.a}
        if self.kind is ProblemKind.DUFFING:
            params["b"] = self.b
        return params

    @property
    def equilibria(self) -> list[StateVector]:
        if self.kind is ProblemKind.LINEAR:
            return [np.zeros(1)]
        if self.kind.is_logistic:
            return [np.zeros(1), np.ones(1)]
        points = [np.zeros(2)]
        if self.b > 0:
            s = math.sqrt(1.0 / self.b)
            points += [np.array([s, 0.0]), np.array([-s, 0.0])]
        return points

    def contains(self, y: Any) -> bool:
        lower, upper = self.region_bounds
        state = np.asarray(y, dtype=np.float64)
        return bool(np.all(state > lower) and np.all(state < upper))

    def sample_region(self, rng: np.random.Generator, count: int) -> list[StateVector]:
        lower, upper = self.region_bounds
        points = []
        while len(points) < count:
            candidate = rng.uniform(lower, upper)
            if self.contains(candidate):
                points.append(candidate)
        return points

    def sibling(self, kind: ProblemKind) -> ProblemSpec:
        """The same ODE with another bundled decomposition."""
        return ProblemSpec(kind, a=self.a, b=self.b, y0=self.y0)


def parse_problem(name: str, a: float | None = None, b: float | None = None) -> ProblemSpec:
    """Build a spec from a CLI name such as ``logistic-v1``."""
    try:
        kind = ProblemKind(name)
    except ValueError as exc:
        names = ", ".join(k.value for k in ProblemKind)
        raise InvalidParameterError(f"Unknown problem '{name}' (expected one of: {names})") from exc
    return ProblemSpec(kind, a=DEFAULT_A if a is None else a, b=DEFAULT_B if b is None else b)


def _logistic_exact(a: float):
    def solution(t: float, y0: StateVector) -> StateVector:
        y0 = as_state(y0, 1)
        if not y0[0] > 0:
            raise InvalidParameterError(f"logistic exact solution needs y0 > 0, got {y0[0]}")
        return np.array([1.0 / (1.0 + (1.0 / y0[0] - 1.0) * math.exp(-a * t))])

    return solution


def _linear_exact(a: float):
    def solution(t: float, y0: StateVector) -> StateVector:
        return as_state(y0, 1) * math.exp(-a * t)

    return solution


def make_problem(spec: ProblemSpec) -> GradientSystem:
    """Build the gradient system (V, grad V, L) for a bundled problem."""
    a, b = spec.a, spec.b
    equilibria = tuple(tuple(p.tolist()) for p in spec.equilibria)
    common = {"name": spec.kind.value, "dim": spec.dim, "equilibria": equilibria, "params": spec.parameters}

    if spec.kind is ProblemKind.LINEAR:
        return GradientSystem(
            V=lambda y: 0.5 * y[0] * y[0],
            gradV=lambda y: np.array([y[0]]),
            Lmat=lambda y: np.array([[-a]]),
            rhs=lambda y: np.array([-a * y[0]]),
            exact_solution=_linear_exact(a),
            **common,
        )

    if spec.kind is ProblemKind.LOGISTIC_V1:
        return GradientSystem(
            V=lambda y: 0.5 * (1.0 - y[0]) ** 2,
            gradV=lambda y: np.array([y[0] - 1.0]),
            Lmat=lambda y: np.array([[-a * y[0]]]),
            rhs=lambda y: np.array([a * y[0] * (1.0 - y[0])]),
            exact_solution=_logistic_exact(a),
            **common,
        )

    if spec.kind is ProblemKind.LOGISTIC_V2:
        return GradientSystem(
            V=lambda y: -0.5 * y[0] ** 2 + y[0] ** 3 / 3.0,
            gradV=lambda y: np.array([-y[0] + y[0] * y[0]]),
            Lmat=lambda y: np.array([[-a]]),
            rhs=lambda y: np.array([a * y[0] * (1.0 - y[0])]),
            exact_solution=_logistic_exact(a),
            **common,
        )

    duffing_l = np.array([[0.0, 1.0], [-1.0, -a]])
    return GradientSystem(
        V=lambda y: 0.5 * (y[1] * y[1] - y[0] * y[0] + 0.5 * b * y[0] ** 4),
        gradV=lambda y: np.array([-y[0] + b * y[0] ** 3, y[1]]),
        Lmat=lambda y: duffing_l,
        rhs=lambda y: np.array([y[1], y[0] - b * y[0] ** 3 - a * y[1]]),
        **common,
    )


def exact_solution(spec: ProblemSpec, t: float, y0: Any) -> StateVector:
    """Closed-form solution for the linear and logistic problems."""
    if not spec.has_exact_solution:
        raise UnsupportedProblemError("duffing has no closed-form solution; use reference_trajectory")
    system = make_problem(spec)
    assert system.exact_solution is not None
    return system.exact_solution(t, as_state(y0, 1))
