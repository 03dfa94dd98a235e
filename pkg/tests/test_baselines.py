import math

import numpy as np
import pytest

from lyapstep.analysis import fit_order, global_error, integrate, log_spaced_steps
from lyapstep.baselines import ROS2_DAMPING, BaselineKind, BaselineMethod, baseline_step, fd_jacobian
from lyapstep.core.errors import InvalidParameterError, SingularStepError
from lyapstep.problems import ProblemSpec, make_problem


def decay(y):
    return -y


class TestBaselineStep:
    def test_euler(self):
        assert baseline_step(BaselineMethod.euler(), decay, [1.0], 0.1)[0] == pytest.approx(0.9)

    def test_rk4_is_fourth_order_taylor(self):
        expected = sum((-0.1) ** k / math.factorial(k) for k in range(5))
        assert baseline_step(BaselineMethod.rk4(), decay, [1.0], 0.1)[0] == pytest.approx(expected, abs=1e-15)

    def test_ros2_close_to_exponential(self):
        euler_err = abs(baseline_step(BaselineMethod.euler(), decay, [1.0], 0.1)[0] - math.exp(-0.1))
        ros2_err = abs(baseline_step(BaselineMethod.ros2(), decay, [1.0], 0.1)[0] - math.exp(-0.1))
        assert ros2_err < 1e-3
        assert ros2_err < euler_err

    def test_ros2_is_stable_on_stiff_decay(self):
        y = np.array([5.0])
        for _ in range(100):
            y = baseline_step(BaselineMethod.ros2(), lambda v: -1000.0 * v, y, 1e-2)
        assert abs(y[0]) < 5.0

    @pytest.mark.parametrize("kind", list(BaselineKind))
    def test_equilibrium_unchanged(self, kind, duffing):
        method = BaselineMethod(kind)
        z = baseline_step(method, duffing.vector_field, [1.0, 0.0], 1e-3)
        assert np.array_equal(z, [1.0, 0.0])

    def test_singular_iteration_matrix(self):
        # h d J = 0.5 * 0.5 * 4 = 1 exactly, so W = 0
        with pytest.raises(SingularStepError):
            baseline_step(BaselineMethod.ros2(d=0.5), lambda v: 4.0 * v, [0.0], 0.5)

    def test_rejects_non_positive_step(self):
        with pytest.raises(InvalidParameterError):
            baseline_step(BaselineMethod.euler(), decay, [1.0], -1e-3)


class TestBaselineMethod:
    def test_labels_and_orders(self):
        assert [m.label for m in (BaselineMethod.euler(), BaselineMethod.rk4(), BaselineMethod.ros2())] == [
            "euler",
            "rk4",
            "ros2",
        ]
        assert [m.order for m in (BaselineMethod.euler(), BaselineMethod.rk4(), BaselineMethod.ros2())] == [1, 4, 2]

    def test_default_damping(self):
        assert BaselineMethod.ros2().d == pytest.approx(1.0 / (2.0 + math.sqrt(2.0)))
        assert ROS2_DAMPING == BaselineMethod.ros2().d

    def test_damping_must_be_positive(self):
        with pytest.raises(InvalidParameterError):
            BaselineMethod.ros2(d=0.0)


class TestFdJacobian:
    def test_linear_map(self):
        A = np.array([[0.0, 1.0], [-1.0, -1000.0]])
        jac = fd_jacobian(lambda y: A @ y, np.array([0.3, -0.2]))
        assert np.allclose(jac, A, rtol=1e-6, atol=1e-5)

    def test_duffing(self, duffing):
        y = np.array([0.5, 0.1])
        expected = np.array([[0.0, 1.0], [1.0 - 3.0 * y[0] ** 2, -1000.0]])
        assert np.allclose(fd_jacobian(duffing.vector_field, y), expected, atol=1e-5)


class TestStabilityFunctions:
    """On y' = -a y one step multiplies y by a polynomial in x = a h."""

    def test_euler(self, rng):
        for _ in range(50):
            a = rng.uniform(1.0, 2000.0)
            x = rng.uniform(0.0, 2.0)
            h = x / a
            y = baseline_step(BaselineMethod.euler(), lambda v: -a * v, [1.0], h)[0]
            assert y == pytest.approx(1.0 - a * h, rel=1e-13, abs=1e-15)

    def test_rk4(self, rng):
        for _ in range(50):
            a = rng.uniform(1.0, 2000.0)
            x = rng.uniform(0.0, 2.0)
            h = x / a
            y = baseline_step(BaselineMethod.rk4(), lambda v: -a * v, [1.0], h)[0]
            expected = sum((-a * h) ** k / math.factorial(k) for k in range(5))
            assert y == pytest.approx(expected, rel=1e-13, abs=1e-15)


class TestRos2Order:
    def test_second_order_on_logistic(self):
        system = make_problem(ProblemSpec.logistic_v1())
        pairs = []
        for h in log_spaced_steps(1e-6, 1e-4, 8):
            traj = integrate(BaselineMethod.ros2(), system, [5.0], h, 0.005)
            pairs.append((h, global_error(traj, system.exact_solution)))
        assert fit_order(pairs, method="ros2").slope == pytest.approx(2.0, abs=0.2)
