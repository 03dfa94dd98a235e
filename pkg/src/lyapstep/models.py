"""Pydantic models for CLI invocations and experiment metadata sidecars."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from lyapstep.problems.catalog import ProblemKind


# ── Invocation ──────────────────────────────────────────────────


class CliInvocation(BaseModel):
    subcommand: Literal["integrate", "sweep", "order", "phase", "compare"]
    problem: ProblemKind = Field(..., description="Bundled problem")
    a: float = Field(1000.0, description="Stiffness parameter a > 0")
    b: float = Field(1.0, description="Duffing cubic coefficient b != 0")
    methods: list[str] = Field(..., min_length=1, description="Method names")
    h_list: list[float] = Field(..., min_length=1, description="Step sizes")
    t_end: float = Field(..., description="Final time")
    y0: list[float] | None = Field(None, description="Initial state (problem default if omitted)")
    out: Path = Field(Path("."), description="Output directory")
    plot: bool = False
    seed: int = 0
    newton_tol: float = Field(1e-12, gt=0)
    newton_max_iters: int = Field(50, ge=1)
    ltilde: Literal["frozen", "midpoint"] = "frozen"
    predictor: Literal["euler", "identity"] | None = None

    @field_validator("a")
    @classmethod
    def _a_positive(cls, value: float) -> float:
        if not (value > 0 and math.isfinite(value)):
            raise ValueError(f"a must be a positive finite number, got {value}")
        return value

    @field_validator("h_list")
    @classmethod
    def _steps_positive(cls, value: list[float]) -> list[float]:
        bad = [h for h in value if not (h > 0 and math.isfinite(h))]
        if bad:
            raise ValueError(f"step sizes must be positive, got {bad}")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> CliInvocation:
        if self.problem is ProblemKind.DUFFING and (self.b == 0 or not math.isfinite(self.b)):
            raise ValueError("b must be non-zero for duffing")
        if not self.t_end >= max(self.h_list) * (1.0 - 1e-12):
            raise ValueError(f"t_end={self.t_end} must be at least the largest step {max(self.h_list)}")
        dim = 2 if self.problem is ProblemKind.DUFFING else 1
        if self.y0 is not None and len(self.y0) != dim:
            raise ValueError(f"{self.problem.value} needs a {dim}-component y0, got {len(self.y0)}")
        return self


# ── Metadata sidecars ───────────────────────────────────────────


class ExperimentMeta(BaseModel):
    command: str
    version: str
    problem: str
    parameters: dict[str, float]
    y0: list[float]
    t_end: float
    methods: list[str]
    h_list: list[float]
    seed: int = 0
    blowup_threshold: float
    error_norm: str = "inf"
    extra: dict[str, Any] = Field(default_factory=dict)


class FitOut(BaseModel):
    method: str
    slope: float
    intercept: float
    residual: float
    num_pairs: int
