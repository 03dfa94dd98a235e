import numpy as np
import pytest

from lyapstep.problems import ProblemSpec, make_problem


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def duffing():
    return make_problem(ProblemSpec.duffing())


@pytest.fixture
def linear():
    return make_problem(ProblemSpec.linear())


@pytest.fixture
def logistic_v1():
    return make_problem(ProblemSpec.logistic_v1())


@pytest.fixture
def logistic_v2():
    return make_problem(ProblemSpec.logistic_v2())
