import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lyapstep.core import (
    Definiteness,
    GradientSystem,
    as_state,
    check_definiteness,
    check_gradient,
    eval_vector_field,
    verify_linear_gradient_form,
)
from lyapstep.core.errors import DimensionMismatchError, NonFiniteStateError
from lyapstep.problems import ProblemKind, ProblemSpec, make_problem


class TestAsState:
    def test_scalar_becomes_vector(self):
        state = as_state(3.0)
        assert state.shape == (1,)
        assert state.dtype == np.float64

    def test_dimension_checked(self):
        with pytest.raises(DimensionMismatchError):
            as_state([1.0, 2.0], dim=1)

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteStateError):
            as_state([np.nan, 0.0])

    def test_matrix_rejected(self):
        with pytest.raises(DimensionMismatchError):
            as_state(np.eye(2))


class TestVectorField:
    def test_duffing_equilibrium(self, duffing):
        assert np.array_equal(eval_vector_field(duffing, [1.0, 0.0]), [0.0, 0.0])

    def test_linear(self):
        system = make_problem(ProblemSpec.linear(a=2.0))
        assert eval_vector_field(system, [3.0])[0] == pytest.approx(-6.0)

    def test_logistic(self, logistic_v1, logistic_v2):
        assert eval_vector_field(logistic_v1, [5.0])[0] == pytest.approx(-20000.0)
        assert eval_vector_field(logistic_v2, [5.0])[0] == pytest.approx(-20000.0)

    def test_non_finite_field_raises(self):
        system = GradientSystem(
            name="broken",
            dim=1,
            V=lambda y: 0.0,
            gradV=lambda y: np.array([np.inf]),
            Lmat=lambda y: np.array([[-1.0]]),
        )
        with pytest.raises(NonFiniteStateError):
            eval_vector_field(system, [1.0])

    def test_wrong_dimension_raises(self, duffing):
        with pytest.raises(DimensionMismatchError):
            eval_vector_field(duffing, [1.0])


class TestDefiniteness:
    def test_negative_identity(self):
        report = check_definiteness(-np.eye(2), tol=1e-10)
        assert report.classification is Definiteness.NEGATIVE_DEFINITE
        assert report.max_sym_eigenvalue == pytest.approx(-1.0)

    def test_duffing_matrix_is_semidefinite(self):
        report = check_definiteness([[0.0, 1.0], [-1.0, -1000.0]])
        assert report.classification is Definiteness.NEGATIVE_SEMIDEFINITE
        assert report.classification.guarantees_decrease
        assert report.max_sym_eigenvalue == pytest.approx(0.0, abs=1e-12)

    def test_identity_is_indefinite(self):
        report = check_definiteness(np.eye(2))
        assert report.classification is Definiteness.INDEFINITE
        assert not report.classification.guarantees_decrease

    def test_tolerance_recorded(self):
        assert check_definiteness([[-1.0]], tol=1e-6).tolerance_used == 1e-6

    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatchError):
            check_definiteness(np.ones((2, 3)))

    @settings(max_examples=200, deadline=None)
    @given(
        base=arrays(np.float64, (3, 3), elements=st.floats(-10, 10)),
        skew_seed=arrays(np.float64, (3, 3), elements=st.floats(-10, 10)),
    )
    def test_skew_part_is_ignored(self, base, skew_seed):
        top = np.linalg.eigvalsh(0.5 * (base + base.T))[-1]
        assume(abs(top) > 1e-6)
        skew = skew_seed - skew_seed.T
        assert check_definiteness(base + skew).classification is check_definiteness(base).classification


class TestLinearGradientForm:
    def test_duffing_grid(self, duffing):
        grid = [(x, y) for x in np.linspace(-2, 2, 9) for y in np.linspace(-2, 2, 9)]
        ok, report = verify_linear_gradient_form(duffing, grid)
        assert ok
        for sample in report.samples:
            assert sample.decrease_rate == pytest.approx(-1000.0 * sample.y[1] ** 2, abs=1e-9)

    def test_linear_random_samples(self, linear, rng):
        samples = ProblemSpec.linear().sample_region(rng, 100)
        ok, report = verify_linear_gradient_form(linear, samples, tol=1e-10)
        assert ok
        assert len(report.samples) == 100
        assert all(sample.mismatch == 0.0 for sample in report.samples)

    def test_logistic_v1_positive_states(self, logistic_v1):
        samples = [y for y in np.linspace(0.05, 1.95, 39) if abs(y - 1.0) > 1e-9]
        ok, _ = verify_linear_gradient_form(logistic_v1, samples)
        assert ok

    def test_logistic_v1_fails_for_negative_state(self, logistic_v1):
        ok, report = verify_linear_gradient_form(logistic_v1, [-0.5])
        assert not ok
        assert report.failures[0].decrease_rate > 0

    def test_logistic_v2_everywhere(self, logistic_v2):
        ok, _ = verify_linear_gradient_form(logistic_v2, np.linspace(-1, 3, 41))
        assert ok

    def test_sign_flipped_l_is_caught(self, duffing):
        flipped = GradientSystem(
            name="flipped",
            dim=2,
            V=duffing.V,
            gradV=duffing.gradV,
            Lmat=lambda y: -duffing.Lmat(y),
        )
        ok, report = verify_linear_gradient_form(flipped, [(0.3, 0.5), (-1.2, 0.7)])
        assert not ok
        assert len(report.failures) == 2

    def test_decomposition_mismatch_is_caught(self, duffing):
        wrong_rhs = GradientSystem(
            name="wrong",
            dim=2,
            V=duffing.V,
            gradV=duffing.gradV,
            Lmat=duffing.Lmat,
            rhs=lambda y: duffing.rhs(y) + np.array([1.0, 0.0]),
        )
        ok, report = verify_linear_gradient_form(wrong_rhs, [(0.5, 0.0)])
        assert not ok
        assert report.failures[0].mismatch == pytest.approx(1.0)


class TestCheckGradient:
    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_bundled_gradients_match_finite_differences(self, kind, rng):
        spec = ProblemSpec(kind)
        system = make_problem(spec)
        report = check_gradient(system, spec.sample_region(rng, 50))
        assert report.passed, report.worst_sample

    def test_wrong_gradient_detected(self, duffing):
        bad = GradientSystem(
            name="bad",
            dim=2,
            V=duffing.V,
            gradV=lambda y: 2.0 * duffing.gradV(y),
            Lmat=duffing.Lmat,
        )
        report = check_gradient(bad, [(0.5, 0.5)])
        assert not report.passed
        assert report.worst_sample == (0.5, 0.5)
