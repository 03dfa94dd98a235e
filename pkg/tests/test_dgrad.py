import math

import numpy as np
import pytest

from lyapstep.core import GradientSystem
from lyapstep.core.errors import (
    DimensionMismatchError,
    InvalidParameterError,
    NonQuadraticLyapunovError,
)
from lyapstep.dgrad import (
    DGScheme,
    DiscreteGradientKind,
    LtildeRule,
    NewtonConfig,
    Predictor,
    StepStatus,
    closed_form_update,
    default_scheme,
    dg_residual,
    dg_step,
    dg_step_explicit_1d,
    discrete_gradient,
    is_quadratic_1d,
)
from lyapstep.methods import build_method
from lyapstep.problems import ProblemKind, ProblemSpec, make_problem


def quadratic_2d() -> GradientSystem:
    return GradientSystem(
        name="quadratic",
        dim=2,
        V=lambda y: 0.5 * float(y @ y),
        gradV=lambda y: y.copy(),
        Lmat=lambda y: -np.eye(2),
    )


class TestDiscreteGradient:
    def test_quotients_by_hand(self):
        scheme = default_scheme(quadratic_2d())
        assert np.allclose(discrete_gradient(scheme, [0.0, 0.0], [2.0, 2.0]), [1.0, 1.0], atol=1e-15)

    def test_consistency_at_diagonal(self):
        scheme = default_scheme(quadratic_2d())
        assert np.array_equal(discrete_gradient(scheme, [1.0, 2.0], [1.0, 2.0]), [1.0, 2.0])

    def test_duffing_degenerate_second_coordinate(self, duffing):
        scheme = default_scheme(duffing)
        grad = discrete_gradient(scheme, [0.0, 0.0], [2.0, 0.0])
        assert grad[0] == pytest.approx(1.0, abs=1e-14)
        assert grad[1] == 0.0

    def test_mean_value_property_on_duffing(self, duffing, rng):
        scheme = default_scheme(duffing)
        for _ in range(1000):
            y = rng.uniform(-2.0, 2.0, size=2)
            z = rng.uniform(-2.0, 2.0, size=2)
            vy, vz = duffing.V(y), duffing.V(z)
            gap = abs(discrete_gradient(scheme, y, z) @ (z - y) - (vz - vy))
            assert gap <= 1e-12 * (1.0 + abs(vy) + abs(vz))

    def test_mean_value_property_inside_quadrature_band(self, duffing, rng):
        scheme = default_scheme(duffing)
        for _ in range(200):
            y = rng.uniform(-2.0, 2.0, size=2)
            z = y + rng.uniform(-1e-5, 1e-5, size=2)
            vy, vz = duffing.V(y), duffing.V(z)
            gap = abs(discrete_gradient(scheme, y, z) @ (z - y) - (vz - vy))
            assert gap <= 1e-12 * (1.0 + abs(vy) + abs(vz))

    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_consistency_on_bundled_problems(self, kind, rng):
        spec = ProblemSpec(kind)
        system = make_problem(spec)
        scheme = default_scheme(system)
        for y in spec.sample_region(rng, 100):
            assert np.max(np.abs(discrete_gradient(scheme, y, y) - system.gradV(y))) <= 1e-10

    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_mean_value_property_on_bundled_problems(self, kind, rng):
        spec = ProblemSpec(kind)
        system = make_problem(spec)
        scheme = default_scheme(system)
        starts = spec.sample_region(rng, 1000)
        ends = spec.sample_region(rng, 1000)
        for y, z in zip(starts, ends):
            vy, vz = system.V(y), system.V(z)
            gap = abs(discrete_gradient(scheme, y, z) @ (z - y) - (vz - vy))
            assert gap <= 1e-12 * (1.0 + abs(vy) + abs(vz))

    def test_close_points_approach_gradient(self, duffing):
        scheme = default_scheme(duffing)
        y = np.array([0.7, -0.4])
        grad = discrete_gradient(scheme, y, y + 1e-9)
        assert np.allclose(grad, duffing.gradV(y), atol=1e-8)

    def test_ordering_changes_path(self):
        coupled = GradientSystem(
            name="coupled",
            dim=2,
            V=lambda y: y[0] ** 2 * y[1] ** 2,
            gradV=lambda y: np.array([2 * y[0] * y[1] ** 2, 2 * y[0] ** 2 * y[1]]),
            Lmat=lambda y: -np.eye(2),
        )
        natural = default_scheme(coupled)
        reversed_path = default_scheme(coupled, kind=DiscreteGradientKind.itoh_abe((1, 0)))
        y, z = np.array([1.0, 1.0]), np.array([2.0, 3.0])
        g_nat = discrete_gradient(natural, y, z)
        g_rev = discrete_gradient(reversed_path, y, z)
        assert not np.allclose(g_nat, g_rev)
        gap = coupled.V(z) - coupled.V(y)
        assert g_nat @ (z - y) == pytest.approx(gap)
        assert g_rev @ (z - y) == pytest.approx(gap)


class TestSchemeValidation:
    def test_exact_1d_needs_scalar_system(self, duffing):
        with pytest.raises(DimensionMismatchError):
            DGScheme(duffing, kind=DiscreteGradientKind.exact_1d())

    def test_ordering_must_be_permutation(self, duffing):
        with pytest.raises(InvalidParameterError):
            DGScheme(duffing, kind=DiscreteGradientKind.itoh_abe((0, 0)))

    def test_band_not_below_threshold(self, duffing):
        with pytest.raises(InvalidParameterError):
            DGScheme(duffing, degenerate_threshold=1e-3, quadrature_band=1e-6)

    def test_newton_config_checks(self):
        with pytest.raises(InvalidParameterError):
            NewtonConfig(max_iters=0)
        with pytest.raises(InvalidParameterError):
            NewtonConfig(abs_tol=0.0)

    def test_default_scheme_kind(self, duffing, linear):
        assert default_scheme(linear).kind == DiscreteGradientKind.exact_1d()
        assert default_scheme(duffing).kind == DiscreteGradientKind.itoh_abe()


class TestResidual:
    def test_trapezoidal_root(self, linear):
        scheme = default_scheme(linear)
        z = 5.0 * (2.0 - 1.0) / (2.0 + 1.0)
        assert dg_residual(scheme, [5.0], [z], 1e-3)[0] == pytest.approx(0.0, abs=1e-14)

    def test_equilibrium(self, duffing):
        scheme = default_scheme(duffing)
        assert np.array_equal(dg_residual(scheme, [1.0, 0.0], [1.0, 0.0], 1e-3), [0.0, 0.0])

    def test_logistic_consistent_root(self, logistic_v2):
        scheme = default_scheme(logistic_v2)
        y, ha = 5.0, 1000.0 * 7e-4
        # F(z) = 0 rearranged as A z^2 + B z + C = 0
        A = ha / 3.0
        B = 1.0 - ha / 2.0 + ha * y / 3.0
        C = -y - ha * y / 2.0 + ha * y * y / 3.0
        root = (-B + math.sqrt(B * B - 4.0 * A * C)) / (2.0 * A)
        assert dg_residual(scheme, [y], [root], 7e-4)[0] == pytest.approx(0.0, abs=1e-12)

    def test_rejects_non_positive_step(self, linear):
        with pytest.raises(InvalidParameterError):
            dg_residual(default_scheme(linear), [1.0], [1.0], 0.0)


class TestDGStep:
    def test_linear_is_trapezoidal(self, linear):
        z, diag = dg_step(default_scheme(linear), [5.0], 1e-3)
        assert diag.status is StepStatus.CONVERGED
        assert z[0] == pytest.approx(5.0 / 3.0, abs=1e-11)
        assert diag.delta_V < 0

    def test_trapezoidal_equivalence_random(self, rng):
        for _ in range(50):
            a = rng.uniform(1.0, 2000.0)
            h = rng.uniform(1e-5, 1e-2)
            y = rng.uniform(-10.0, 10.0)
            scheme = default_scheme(make_problem(ProblemSpec.linear(a=a)))
            z, diag = dg_step(scheme, [y], h)
            expected = y * (2.0 - a * h) / (2.0 + a * h)
            assert diag.status is StepStatus.CONVERGED
            assert z[0] == pytest.approx(expected, rel=1e-13, abs=1e-14)

    @pytest.mark.parametrize("point", [(1.0, 0.0), (-1.0, 0.0)])
    @pytest.mark.parametrize("h", [1e-3, 1.0])
    def test_duffing_fixed_points(self, duffing, point, h):
        scheme = default_scheme(duffing, newton=NewtonConfig(predictor=Predictor.IDENTITY))
        z, diag = dg_step(scheme, point, h)
        assert np.array_equal(z, point)
        assert diag.newton_iters == 0
        assert diag.delta_V == 0.0

    def test_duffing_step_decreases_v(self, duffing):
        scheme = default_scheme(duffing)
        z, diag = dg_step(scheme, [0.3, 0.0], 1e-3)
        assert diag.status is StepStatus.CONVERGED
        assert diag.delta_V <= 1e-12
        assert diag.residual_norm <= scheme.newton.tolerance(np.array([0.3, 0.0]))

    def test_midpoint_ltilde_converges(self, duffing):
        scheme = default_scheme(duffing, ltilde=LtildeRule.MIDPOINT)
        _, diag = dg_step(scheme, [0.3, 0.2], 1e-3)
        assert diag.status is StepStatus.CONVERGED
        assert diag.delta_V <= 1e-12

    def test_iteration_cap_reported(self, logistic_v2):
        scheme = default_scheme(logistic_v2, newton=NewtonConfig(max_iters=1))
        _, diag = dg_step(scheme, [5.0], 7e-4)
        assert diag.status is StepStatus.MAX_ITERS
        assert diag.newton_iters == 1

    def test_singular_jacobian_reports_iterations_done(self, logistic_v2, monkeypatch):
        solve = np.linalg.solve
        calls = []

        def fail_on_second_call(a, b):
            calls.append(a)
            if len(calls) == 2:
                raise np.linalg.LinAlgError("Singular matrix")
            return solve(a, b)

        monkeypatch.setattr(np.linalg, "solve", fail_on_second_call)
        _, diag = dg_step(default_scheme(logistic_v2), [5.0], 7e-4)
        assert diag.status is StepStatus.MAX_ITERS
        assert diag.newton_iters == 1
        assert diag.newton_iters < default_scheme(logistic_v2).newton.max_iters

    def test_duffing_decrease_identity(self, duffing, rng):
        scheme = default_scheme(duffing)
        eps = np.finfo(np.float64).eps
        checked = 0
        for start in ProblemSpec.duffing().sample_region(rng, 10):
            y = start
            for _ in range(200):
                z, diag = dg_step(scheme, y, 1e-3)
                if diag.status is StepStatus.CONVERGED:
                    assert diag.delta_V <= 10.0 * eps * (1.0 + abs(duffing.V(y)))
                    checked += 1
                y = z
        assert checked == 2000

    @pytest.mark.slow
    def test_duffing_long_run_never_increases_v(self, duffing):
        scheme = default_scheme(duffing)
        y = np.array([0.3, 0.0])
        for _ in range(math.ceil(10.0 / 1e-5)):
            y, diag = dg_step(scheme, y, 1e-5)
            assert diag.status is StepStatus.CONVERGED
            assert diag.delta_V <= 1e-12

    def test_logistic_implicit_preset_reaches_equilibrium(self):
        preset = build_method("dg-i", ProblemSpec.logistic_v1())
        y = np.array([5.0])
        for _ in range(math.ceil(0.05 / 7e-4)):
            y, diag = dg_step(preset.method, y, 7e-4)
            assert diag.status is StepStatus.CONVERGED
        assert abs(y[0] - 1.0) < 1e-6


class TestClosedForm:
    def test_logistic_value(self):
        scheme = DGScheme(
            make_problem(ProblemSpec.logistic_v1(a=1.0)),
            kind=DiscreteGradientKind.exact_1d(),
            closed_form=True,
        )
        assert dg_step_explicit_1d(scheme, 0.5, 0.1) == pytest.approx(1.075 * 0.5 / 1.025, abs=1e-15)

    @pytest.mark.parametrize("y", [0.0, 1.0])
    @pytest.mark.parametrize("a,h", [(1.0, 0.1), (1000.0, 7e-4), (50.0, 2.0)])
    def test_fixed_points(self, y, a, h):
        scheme = DGScheme(make_problem(ProblemSpec.logistic_v1(a=a)), kind=DiscreteGradientKind.exact_1d())
        assert dg_step_explicit_1d(scheme, y, h) == pytest.approx(y, abs=1e-15)

    def test_matches_implicit_solve(self, logistic_v1, rng):
        scheme = DGScheme(logistic_v1, kind=DiscreteGradientKind.exact_1d())
        for _ in range(100):
            y = rng.uniform(0.01, 10.0)
            h = rng.uniform(1e-6, 1e-3)
            z, diag = dg_step(scheme, [y], h)
            assert diag.status is StepStatus.CONVERGED
            assert abs(dg_step_explicit_1d(scheme, y, h) - z[0]) <= 1e-12

    def test_non_quadratic_rejected(self, logistic_v2):
        assert not is_quadratic_1d(logistic_v2)
        with pytest.raises(NonQuadraticLyapunovError):
            DGScheme(logistic_v2, kind=DiscreteGradientKind.exact_1d(), closed_form=True)
        scheme = DGScheme(logistic_v2, kind=DiscreteGradientKind.exact_1d())
        with pytest.raises(NonQuadraticLyapunovError):
            dg_step_explicit_1d(scheme, 0.5, 1e-3)

    def test_two_dimensional_rejected(self, duffing):
        with pytest.raises(DimensionMismatchError):
            DGScheme(duffing, closed_form=True)

    def test_midpoint_rule_rejected(self, logistic_v1):
        with pytest.raises(InvalidParameterError):
            DGScheme(logistic_v1, kind=DiscreteGradientKind.exact_1d(), ltilde=LtildeRule.MIDPOINT, closed_form=True)

    def test_closed_form_update_is_unvalidated(self, linear):
        scheme = DGScheme(linear, kind=DiscreteGradientKind.exact_1d())
        assert closed_form_update(scheme, 5.0, 1e-3) == pytest.approx(5.0 / 3.0)
