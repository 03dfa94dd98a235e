"""lyapstep CLI - Lyapunov-preserving integration experiments."""

import logging
import math
import sys
from pathlib import Path
from typing import Annotated, Optional

import click
import numpy as np
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from lyapstep import __version__, schema
from lyapstep.analysis import (
    BLOWUP_THRESHOLD,
    OrderFit,
    Trajectory,
    cost_ordering,
    fit_order,
    global_error,
    integrate,
    log_spaced_steps,
    lyapunov_local_maxima,
    max_lyapunov_increment,
    run_sweep,
    snap_to_multiples,
    step_count,
)
from lyapstep.core.errors import DegenerateFitError, LyapstepError, ReferenceBlowupError
from lyapstep.dgrad.scheme import LtildeRule, NewtonConfig, Predictor
from lyapstep.methods import MethodName, MethodPreset, build_methods
from lyapstep.models import CliInvocation, ExperimentMeta, FitOut
from lyapstep.output import ExperimentWriter
from lyapstep.problems import (
    DEFAULT_H_REF,
    ProblemKind,
    ProblemSpec,
    ReferenceTrajectory,
    reference_step_count,
    reference_trajectory,
)
from lyapstep.problems.reference import MAX_STORED_SAMPLES

app = typer.Typer(
    name="lyapstep",
    help="Integrate stiff ODEs with discrete gradient methods that keep a Lyapunov function decreasing",
    add_completion=False,
)
console = Console()
logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_NUMERICAL = 2

ORDER_T_END = 0.005
PHASE_REFERENCE_SAMPLES = 10_000
# Euler is stable for h < 2/a; 1e-5 covers the default a=1000 with a million steps at T=10.
PHASE_H_REF = 1e-5
DEFAULT_SWEEP_STEPS = "1e-3,5e-4,1e-4,5e-5,1e-5,5e-6,1e-6"
DEFAULT_COMPARE_STEPS = "1e-4,7e-4"


def configure_logging(verbose: bool) -> None:
    package_logger = logging.getLogger("lyapstep")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.addHandler(RichHandler(console=Console(stderr=True), show_path=False, markup=False))
    package_logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    package_logger.propagate = False


def _fail(message: str) -> typer.Exit:
    console.print(f"[bold red]Error:[/bold red] {message}")
    return typer.Exit(EXIT_USAGE)


def _parse_floats(text: str | None, what: str) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise _fail(f"Could not parse {what} '{text}' as comma-separated numbers") from exc


def _parse_names(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _invocation(**fields) -> CliInvocation:
    try:
        return CliInvocation(**fields)
    except ValidationError as exc:
        details = "; ".join(err["msg"] for err in exc.errors())
        raise _fail(details) from exc


def _problem(name: str, a: float, b: float, y0: list[float] | None) -> ProblemSpec:
    try:
        kind = ProblemKind(name)
    except ValueError as exc:
        names = ", ".join(k.value for k in ProblemKind)
        raise _fail(f"Unknown problem '{name}' (expected one of: {names})") from exc
    try:
        return ProblemSpec(kind, a=a, b=b, y0=tuple(y0) if y0 is not None else None)
    except LyapstepError as exc:
        raise _fail(str(exc)) from exc


def _t_end(value: float | None, problem: str, fallback: float | None = None) -> float:
    if value is not None:
        return value
    if fallback is not None:
        return fallback
    try:
        return ProblemSpec(ProblemKind(problem)).default_t_end
    except ValueError as exc:
        raise _fail(f"Unknown problem '{problem}'") from exc


def _presets(inv: CliInvocation, spec: ProblemSpec) -> list[MethodPreset]:
    if inv.predictor == Predictor.EULER.value and MethodName.DG_I.value in inv.methods:
        raise _fail("dg-i always starts Newton from the identity predictor; drop --predictor euler")
    newton = NewtonConfig(
        abs_tol=inv.newton_tol,
        rel_tol=inv.newton_tol,
        max_iters=inv.newton_max_iters,
        predictor=Predictor(inv.predictor or Predictor.EULER.value),
    )
    try:
        return build_methods(inv.methods, spec, ltilde=LtildeRule(inv.ltilde), newton=newton)
    except LyapstepError as exc:
        raise _fail(str(exc)) from exc


def _meta(inv: CliInvocation, spec: ProblemSpec, **extra) -> ExperimentMeta:
    return ExperimentMeta(
        command=inv.subcommand,
        version=__version__,
        problem=spec.kind.value,
        parameters=spec.parameters,
        y0=[float(v) for v in spec.default_y0],
        t_end=inv.t_end,
        methods=inv.methods,
        h_list=inv.h_list,
        seed=inv.seed,
        blowup_threshold=BLOWUP_THRESHOLD,
        extra={"ltilde": inv.ltilde, "predictor": inv.predictor or "euler", "newton_tol": inv.newton_tol, **extra},
    )


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-"
    return f"{value:.4e}"


# Options shared by several commands
ProblemOpt = Annotated[str, typer.Option("--problem", "-p", help="linear | logistic-v1 | logistic-v2 | duffing")]
AOpt = Annotated[float, typer.Option("--a", help="Stiffness parameter a > 0")]
BOpt = Annotated[float, typer.Option("--b", help="Duffing cubic coefficient b != 0")]
TEndOpt = Annotated[Optional[float], typer.Option("--t-end", "-T", help="Final time (default: per problem)")]
Y0Opt = Annotated[Optional[str], typer.Option("--y0", help="Initial state, comma-separated (default: per problem)")]
OutOpt = Annotated[Path, typer.Option("--out", "-o", help="Output directory")]
PlotOpt = Annotated[bool, typer.Option("--plot", help="Also write SVG figures")]
SeedOpt = Annotated[int, typer.Option("--seed", help="Seed recorded in metadata")]
NewtonTolOpt = Annotated[float, typer.Option("--newton-tol", help="Absolute and relative Newton tolerance")]
NewtonItersOpt = Annotated[int, typer.Option("--newton-max-iters", help="Newton iteration cap per step")]
LtildeOpt = Annotated[str, typer.Option("--ltilde", help="frozen | midpoint")]
PredictorOpt = Annotated[Optional[str], typer.Option(
    "--predictor",
    help="Newton starting guess: euler | identity (default: euler; dg-i always uses identity)",
)]
HRefOpt = Annotated[float, typer.Option("--h-ref", help="Step of the explicit Euler reference solution")]


@app.callback()
def _main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log solver details")] = False,
) -> None:
    configure_logging(verbose)


@app.command("integrate")
def integrate_cmd(
    problem: ProblemOpt = "duffing",
    method: Annotated[str, typer.Option("--method", "-m", help="euler | rk4 | ros2 | dg | dg-e | dg-i")] = "dg",
    h: Annotated[float, typer.Option("--h", help="Step size")] = 1e-3,
    t_end: TEndOpt = None,
    a: AOpt = 1000.0,
    b: BOpt = 1.0,
    y0: Y0Opt = None,
    out: OutOpt = Path("."),
    plot: PlotOpt = False,
    seed: SeedOpt = 0,
    newton_tol: NewtonTolOpt = 1e-12,
    newton_max_iters: NewtonItersOpt = 50,
    ltilde: LtildeOpt = "frozen",
    predictor: PredictorOpt = None,
) -> None:
    """Integrate one problem with one method and write traj.csv."""
    inv = _invocation(
        subcommand="integrate", problem=problem, a=a, b=b, methods=[method], h_list=[h],
        t_end=_t_end(t_end, problem), y0=_parse_floats(y0, "--y0"), out=out, plot=plot, seed=seed,
        newton_tol=newton_tol, newton_max_iters=newton_max_iters, ltilde=ltilde, predictor=predictor,
    )
    spec = _problem(problem, inv.a, inv.b, inv.y0)
    (preset,) = _presets(inv, spec)

    traj = integrate(preset.method, preset.system, spec.default_y0, h, inv.t_end)

    writer = ExperimentWriter(inv.out)
    writer.write_trajectory(traj)
    writer.write_meta(
        schema.TRAJ_META,
        _meta(inv, spec, decomposition=preset.problem.kind.value, status=traj.status_label()),
    )
    if inv.plot:
        from lyapstep.output.plots import plot_trajectory

        plot_trajectory(traj, writer.path(schema.TRAJ_SVG))

    table = Table(title=f"{preset.name} on {preset.problem.kind.value}")
    table.add_column("h", justify="right")
    table.add_column("Steps", justify="right")
    table.add_column("Status", style="cyan")
    table.add_column("max dV", justify="right")
    table.add_column("Final state")
    table.add_row(
        f"{h:g}", str(traj.num_steps), traj.status_label(), _fmt(max_lyapunov_increment(traj)),
        ", ".join(f"{v:.10g}" for v in traj.final_state),
    )
    console.print(table)
    console.print(f"[green]Wrote {schema.TRAJ_CSV} in {inv.out}[/green]")

    if traj.status.failed:
        raise typer.Exit(EXIT_NUMERICAL)


@app.command("sweep")
def sweep_cmd(
    problem: ProblemOpt = "duffing",
    methods: Annotated[str, typer.Option("--methods", "-m", help="Comma-separated method names")] = "euler,rk4,ros2,dg",
    h_list: Annotated[str, typer.Option("--h-list", help="Comma-separated step sizes")] = DEFAULT_SWEEP_STEPS,
    t_end: TEndOpt = None,
    a: AOpt = 1000.0,
    b: BOpt = 1.0,
    y0: Y0Opt = None,
    out: OutOpt = Path("."),
    plot: PlotOpt = False,
    seed: SeedOpt = 0,
    repeats: Annotated[int, typer.Option("--repeats", help="Timed runs per cell; the minimum is reported")] = 3,
    threads: Annotated[Optional[int], typer.Option(
        "--threads",
        envvar="LYAPSTEP_THREADS",
        help="Workers for the untimed validation pass; timing itself is serial (default: number of cores)",
    )] = None,
    newton_tol: NewtonTolOpt = 1e-12,
    newton_max_iters: NewtonItersOpt = 50,
    ltilde: LtildeOpt = "frozen",
    predictor: PredictorOpt = None,
) -> None:
    """Time every (method, h) pair and write sweep.csv."""
    inv = _invocation(
        subcommand="sweep", problem=problem, a=a, b=b, methods=_parse_names(methods),
        h_list=_parse_floats(h_list, "--h-list"), t_end=_t_end(t_end, problem), y0=_parse_floats(y0, "--y0"),
        out=out, plot=plot, seed=seed, newton_tol=newton_tol, newton_max_iters=newton_max_iters,
        ltilde=ltilde, predictor=predictor,
    )
    spec = _problem(problem, inv.a, inv.b, inv.y0)
    presets = _presets(inv, spec)
    try:
        with console.status("[bold green]Running sweep..."):
            report = run_sweep(spec, presets, inv.h_list, inv.t_end, repeats, threads=threads)
    except LyapstepError as exc:
        raise _fail(str(exc)) from exc

    writer = ExperimentWriter(inv.out)
    writer.write_sweep(report)
    writer.write_meta(schema.SWEEP_META, _meta(inv, spec, repeats=repeats, threads=report.metadata["threads"]))
    if inv.plot:
        from lyapstep.output.plots import plot_cost

        plot_cost(report, writer.path(schema.COST_SVG))

    table = Table(title=f"Sweep on {spec.kind.value}")
    table.add_column("Method", style="cyan")
    table.add_column("h", justify="right")
    table.add_column("Wall time [s]", justify="right", style="green")
    table.add_column("max dV", justify="right")
    table.add_column("Status")
    for row in report.rows:
        table.add_row(row.method, f"{row.h:g}", f"{row.wall_time_s:.4f}", _fmt(row.max_delta_V), row.status.value)
    console.print(table)

    for h in inv.h_list:
        ordering = cost_ordering(report, h)
        if ordering is not None and not ordering.holds:
            console.print(f"[yellow]At h={h:g} dg is not the cheapest method[/yellow]")
    console.print(f"[green]Wrote {len(report.rows)} rows to {schema.SWEEP_CSV} in {inv.out}[/green]")


def _truth_for(preset: MethodPreset, y0: np.ndarray, t_end: float, h_ref: float, h_list: list[float]):
    """Exact solution when the problem has one, otherwise an Euler reference on a shared grid.

    The reference runs to the last sample of every trajectory, which can lie
    past ``t_end`` when ``h`` does not divide it.
    """
    if preset.system.exact_solution is not None:
        return preset.system.exact_solution
    ratios = [h / h_ref for h in h_list]
    if any(abs(r - round(r)) > 1e-9 * r for r in ratios):
        raise _fail("Every step size must be an integer multiple of --h-ref when no exact solution exists")
    stride = math.gcd(*(round(r) for r in ratios))
    horizon = max(step_count(h, t_end) * h for h in h_list)
    return reference_trajectory(preset.system, y0, horizon, h_ref, stride=stride)


def _reference_grid(steps: list[float], t_end: float, h_ref: float) -> list[float]:
    """Default steps moved onto the stored grid of the Euler reference."""
    if not h_ref > 0:
        raise _fail(f"--h-ref must be positive, got {h_ref}")
    stride = max(1, math.ceil(reference_step_count(t_end, h_ref) / MAX_STORED_SAMPLES))
    try:
        return snap_to_multiples(steps, stride * h_ref)
    except LyapstepError as exc:
        raise _fail(str(exc)) from exc


def _self_test_pairs(seed: int) -> dict[str, list[tuple[float, float]]]:
    constant = float(np.random.default_rng(seed).uniform(0.5, 2.0))
    return {"synthetic": [(h, constant * h**2) for h in log_spaced_steps()]}


@app.command("order")
def order_cmd(
    problem: ProblemOpt = "logistic-v1",
    methods: Annotated[str, typer.Option("--methods", "-m", help="Comma-separated method names")] = "euler,dg-e,dg-i",
    h_list: Annotated[Optional[str], typer.Option(
        "--h-list",
        help="Comma-separated step sizes (default: 20 log-spaced values in [1e-6, 1e-4])",
    )] = None,
    t_end: TEndOpt = None,
    a: AOpt = 1000.0,
    b: BOpt = 1.0,
    y0: Y0Opt = None,
    out: OutOpt = Path("."),
    plot: PlotOpt = False,
    seed: SeedOpt = 0,
    h_ref: HRefOpt = DEFAULT_H_REF,
    self_test: Annotated[bool, typer.Option("--self-test", help="Fit synthetic error = C h^2 data instead")] = False,
    newton_tol: NewtonTolOpt = 1e-12,
    newton_max_iters: NewtonItersOpt = 50,
    ltilde: LtildeOpt = "frozen",
    predictor: PredictorOpt = None,
) -> None:
    """Measure global error over a step-size grid and fit the observed order."""
    steps = _parse_floats(h_list, "--h-list") or log_spaced_steps()
    inv = _invocation(
        subcommand="order", problem=problem, a=a, b=b,
        methods=["synthetic"] if self_test else _parse_names(methods), h_list=steps,
        t_end=_t_end(t_end, problem, fallback=ORDER_T_END), y0=_parse_floats(y0, "--y0"), out=out, plot=plot,
        seed=seed, newton_tol=newton_tol, newton_max_iters=newton_max_iters, ltilde=ltilde, predictor=predictor,
    )
    spec = _problem(problem, inv.a, inv.b, inv.y0)
    if h_list is None and not self_test and not spec.has_exact_solution:
        inv = inv.model_copy(update={"h_list": _reference_grid(inv.h_list, inv.t_end, h_ref)})

    if self_test:
        pairs = _self_test_pairs(inv.seed)
    else:
        pairs = {}
        presets = _presets(inv, spec)
        y0_state = spec.default_y0
        for preset in presets:
            try:
                truth = _truth_for(preset, y0_state, inv.t_end, h_ref, inv.h_list)
            except LyapstepError as exc:
                raise _fail(str(exc)) from exc
            items: list[tuple[float, float]] = []
            with console.status(f"[bold green]Integrating {preset.name}..."):
                for h in inv.h_list:
                    traj = integrate(preset.method, preset.system, y0_state, h, inv.t_end)
                    if traj.status.failed:
                        logger.warning("%s at h=%g: %s, excluded from the fit", preset.name, h, traj.status_label())
                        continue
                    items.append((h, global_error(traj, truth)))
            pairs[preset.name] = items

    fits: list[OrderFit] = []
    unfitted: list[str] = []
    for name, items in pairs.items():
        try:
            fits.append(fit_order([p for p in items if p[1] > 0], method=name))
        except DegenerateFitError as exc:
            logger.warning("%s", exc)
            unfitted.append(name)

    writer = ExperimentWriter(inv.out)
    writer.write_order(pairs, fits)
    writer.write_meta(
        schema.ORDER_META,
        _meta(
            inv, spec, self_test=self_test, h_ref=h_ref, unfitted=unfitted,
            fits=[FitOut(method=f.method, slope=f.slope, intercept=f.intercept, residual=f.residual,
                         num_pairs=len(f.pairs)).model_dump() for f in fits],
        ),
    )
    if inv.plot and fits:
        from lyapstep.output.plots import plot_order

        plot_order(fits, writer.path(schema.ORDER_SVG))

    table = Table(title=f"Observed order on {spec.kind.value}")
    table.add_column("Method", style="cyan")
    table.add_column("Slope", justify="right", style="green")
    table.add_column("Residual", justify="right")
    table.add_column("Pairs", justify="right")
    for fit in fits:
        table.add_row(fit.method, f"{fit.slope:.3f}", f"{fit.residual:.2e}", str(len(fit.pairs)))
    for name in unfitted:
        table.add_row(name, "-", "-", str(len(pairs[name])))
    console.print(table)

    if unfitted:
        console.print(f"[yellow]No fit possible for: {', '.join(unfitted)}[/yellow]")
        raise typer.Exit(EXIT_NUMERICAL)


@app.command("phase")
def phase_cmd(
    problem: ProblemOpt = "duffing",
    methods: Annotated[str, typer.Option("--methods", "-m", help="Comma-separated method names")] = "dg,ros2",
    h: Annotated[float, typer.Option("--h", help="Step size")] = 1e-3,
    t_end: TEndOpt = None,
    a: AOpt = 1000.0,
    b: BOpt = 1.0,
    y0: Y0Opt = None,
    out: OutOpt = Path("."),
    plot: PlotOpt = False,
    seed: SeedOpt = 0,
    h_ref: Annotated[float, typer.Option(
        "--h-ref",
        help="Step of the explicit Euler reference curve (default 1e-5 keeps T=10 within --max-reference-steps)",
    )] = PHASE_H_REF,
    max_reference_steps: Annotated[int, typer.Option(
        "--max-reference-steps",
        help="Skip the reference curve when it needs more Euler steps than this",
    )] = 10_000_000,
    newton_tol: NewtonTolOpt = 1e-12,
    newton_max_iters: NewtonItersOpt = 50,
    ltilde: LtildeOpt = "frozen",
    predictor: PredictorOpt = None,
) -> None:
    """Phase portraits of a two-dimensional problem."""
    inv = _invocation(
        subcommand="phase", problem=problem, a=a, b=b, methods=_parse_names(methods), h_list=[h],
        t_end=_t_end(t_end, problem), y0=_parse_floats(y0, "--y0"), out=out, plot=plot, seed=seed,
        newton_tol=newton_tol, newton_max_iters=newton_max_iters, ltilde=ltilde, predictor=predictor,
    )
    spec = _problem(problem, inv.a, inv.b, inv.y0)
    if spec.dim != 2:
        raise _fail(f"Phase portraits need a two-dimensional problem, {spec.kind.value} has dimension {spec.dim}")
    if not h_ref > 0:
        raise _fail(f"--h-ref must be positive, got {h_ref}")
    presets = _presets(inv, spec)
    y0_state = spec.default_y0

    trajectories: list[Trajectory] = []
    for preset in presets:
        with console.status(f"[bold green]Integrating {preset.name}..."):
            trajectories.append(integrate(preset.method, preset.system, y0_state, h, inv.t_end))

    reference: ReferenceTrajectory | None = None
    micro_steps = reference_step_count(inv.t_end, h_ref)
    if micro_steps > max_reference_steps:
        logger.warning(
            "Reference needs %d Euler steps (limit %d); phase portrait drawn without it", micro_steps, max_reference_steps
        )
    else:
        try:
            with console.status("[bold green]Computing reference..."):
                reference = reference_trajectory(
                    presets[0].system, y0_state, inv.t_end, h_ref,
                    stride=max(1, math.ceil(micro_steps / PHASE_REFERENCE_SAMPLES)),
                )
        except ReferenceBlowupError as exc:
            logger.warning("%s; phase portrait drawn without it", exc)

    writer = ExperimentWriter(inv.out)
    for traj in trajectories:
        writer.write_phase(traj)
    writer.write_meta(
        schema.PHASE_META,
        _meta(
            inv, spec, h_ref=h_ref, reference=reference is not None,
            statuses={t.method: t.status_label() for t in trajectories},
        ),
    )
    if inv.plot:
        from lyapstep.output.plots import plot_lyapunov, plot_phase

        plot_phase(trajectories, writer.path(schema.PHASE_SVG), reference.samples if reference else None)
        plot_lyapunov(trajectories, writer.path(schema.LYAPUNOV_SVG))

    table = Table(title=f"Phase portrait on {spec.kind.value}, h = {h:g}")
    table.add_column("Method", style="cyan")
    table.add_column("Status")
    table.add_column("max dV", justify="right")
    table.add_column("V maxima", justify="right")
    table.add_column("Final state")
    for traj in trajectories:
        table.add_row(
            traj.method, traj.status_label(), _fmt(max_lyapunov_increment(traj)), str(lyapunov_local_maxima(traj)),
            ", ".join(f"{v:.6g}" for v in traj.final_state),
        )
    console.print(table)

    if any(t.status.failed for t in trajectories):
        raise typer.Exit(EXIT_NUMERICAL)


@app.command("compare")
def compare_cmd(
    problem: ProblemOpt = "logistic-v1",
    methods: Annotated[str, typer.Option("--methods", "-m", help="Comma-separated method names")] = "euler,dg-e,dg-i",
    h_list: Annotated[str, typer.Option("--h-list", help="Comma-separated step sizes")] = DEFAULT_COMPARE_STEPS,
    t_end: TEndOpt = None,
    a: AOpt = 1000.0,
    y0: Y0Opt = None,
    out: OutOpt = Path("."),
    plot: PlotOpt = False,
    seed: SeedOpt = 0,
    newton_tol: NewtonTolOpt = 1e-12,
    newton_max_iters: NewtonItersOpt = 50,
    ltilde: LtildeOpt = "frozen",
    predictor: PredictorOpt = None,
) -> None:
    """Overlay scalar trajectories on the exact solution for each step size."""
    inv = _invocation(
        subcommand="compare", problem=problem, a=a, methods=_parse_names(methods),
        h_list=_parse_floats(h_list, "--h-list"), t_end=_t_end(t_end, problem), y0=_parse_floats(y0, "--y0"),
        out=out, plot=plot, seed=seed, newton_tol=newton_tol, newton_max_iters=newton_max_iters,
        ltilde=ltilde, predictor=predictor,
    )
    spec = _problem(problem, inv.a, inv.b, inv.y0)
    if spec.dim != 1 or not spec.has_exact_solution:
        raise _fail(f"compare needs a scalar problem with an exact solution, got {spec.kind.value}")
    presets = _presets(inv, spec)
    y0_state = spec.default_y0
    exact = presets[0].system.exact_solution
    assert exact is not None
    try:
        exact(0.0, y0_state)
    except LyapstepError as exc:
        raise _fail(str(exc)) from exc

    trajectories: list[Trajectory] = []
    for h in inv.h_list:
        for preset in presets:
            with console.status(f"[bold green]Integrating {preset.name} at h={h:g}..."):
                trajectories.append(integrate(preset.method, preset.system, y0_state, h, inv.t_end))

    writer = ExperimentWriter(inv.out)
    writer.write_comparison(trajectories, exact)
    writer.write_meta(
        schema.COMPARE_META,
        _meta(inv, spec, statuses=[{"method": t.method, "h": t.h, "status": t.status_label()} for t in trajectories]),
    )
    if inv.plot:
        from lyapstep.output.plots import plot_comparison

        plot_comparison(trajectories, exact, writer.path(schema.COMPARE_SVG))

    table = Table(title=f"Comparison on {spec.kind.value}")
    table.add_column("Method", style="cyan")
    table.add_column("h", justify="right")
    table.add_column("Status")
    table.add_column("Global error", justify="right", style="green")
    table.add_column("Final y", justify="right")
    for traj in trajectories:
        error = "-" if traj.status.failed else f"{global_error(traj, exact):.4e}"
        table.add_row(traj.method, f"{traj.h:g}", traj.status_label(), error, f"{traj.final_state[0]:.10g}")
    console.print(table)
    console.print(f"[green]Wrote {schema.COMPARE_CSV} in {inv.out}[/green]")


@app.command()
def version() -> None:
    """Show the current version of lyapstep."""
    console.print(f"lyapstep version {__version__}")


def main() -> None:
    """Console entry point; usage errors exit with status 1."""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.Abort:
        code = EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        code = EXIT_USAGE
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
