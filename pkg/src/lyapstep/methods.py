"""Named integration methods as exposed on the command line."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from lyapstep.baselines import BaselineMethod
from lyapstep.core.errors import InvalidParameterError
from lyapstep.core.system import GradientSystem
from lyapstep.dgrad.scheme import DGScheme, DiscreteGradientKind, LtildeRule, NewtonConfig, Predictor, default_scheme
from lyapstep.problems.catalog import ProblemKind, ProblemSpec, make_problem


class MethodName(str, Enum):
    EULER = "euler"
    RK4 = "rk4"
    ROS2 = "ros2"
    DG = "dg"
    DG_E = "dg-e"
    DG_I = "dg-i"

    @property
    def is_discrete_gradient(self) -> bool:
        return self in (MethodName.DG, MethodName.DG_E, MethodName.DG_I)


@dataclass(frozen=True)
class MethodPreset:
    """A ready-to-run method and the decomposition whose V it is judged by."""

    name: str
    method: DGScheme | BaselineMethod
    system: GradientSystem
    problem: ProblemSpec


def parse_method(name: str) -> MethodName:
    try:
        return MethodName(name.strip())
    except ValueError as exc:
        names = ", ".join(m.value for m in MethodName)
        raise InvalidParameterError(f"Unknown method '{name}' (expected one of: {names})") from exc


def build_method(
    name: str | MethodName,
    spec: ProblemSpec,
    *,
    ltilde: LtildeRule = LtildeRule.FROZEN,
    newton: NewtonConfig | None = None,
) -> MethodPreset:
    """Resolve a method name against a problem.

    On the logistic family ``dg-e`` always runs on the first decomposition
    (quadratic V, closed form) and ``dg-i`` on the second (L = -a, identity
    predictor), whichever variant was requested.
    """
    method_name = name if isinstance(name, MethodName) else parse_method(name)
    newton = newton or NewtonConfig()

    if not method_name.is_discrete_gradient:
        system = make_problem(spec)
        factory = {
            MethodName.EULER: BaselineMethod.euler,
            MethodName.RK4: BaselineMethod.rk4,
            MethodName.ROS2: BaselineMethod.ros2,
        }[method_name]
        return MethodPreset(method_name.value, factory(), system, spec)

    if method_name is MethodName.DG:
        system = make_problem(spec)
        scheme = default_scheme(system, ltilde=ltilde, newton=newton, label=method_name.value)
        return MethodPreset(method_name.value, scheme, system, spec)

    if method_name is MethodName.DG_E:
        target = spec.sibling(ProblemKind.LOGISTIC_V1) if spec.kind.is_logistic else spec
        system = make_problem(target)
        # closed_form validation raises for non-quadratic V or dim > 1
        scheme = DGScheme(
            system=system,
            kind=DiscreteGradientKind.exact_1d() if system.dim == 1 else DiscreteGradientKind.itoh_abe(),
            ltilde=LtildeRule.FROZEN,
            newton=newton,
            closed_form=True,
            label=method_name.value,
        )
        return MethodPreset(method_name.value, scheme, system, target)

    target = spec.sibling(ProblemKind.LOGISTIC_V2) if spec.kind.is_logistic else spec
    system = make_problem(target)
    implicit_newton = replace(newton, predictor=Predictor.IDENTITY)
    scheme = default_scheme(system, ltilde=ltilde, newton=implicit_newton, label=method_name.value)
    return MethodPreset(method_name.value, scheme, system, target)


def build_methods(
    names: list[str],
    spec: ProblemSpec,
    *,
    ltilde: LtildeRule = LtildeRule.FROZEN,
    newton: NewtonConfig | None = None,
) -> list[MethodPreset]:
    if not names:
        raise InvalidParameterError("At least one method is required")
    return [build_method(n, spec, ltilde=ltilde, newton=newton) for n in names]
