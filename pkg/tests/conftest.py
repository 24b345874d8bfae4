import numpy as np
import pytest
from hypothesis import strategies as st

from twistor_ga.ga_core import Multivector, random_multivector
from twistor_ga.sta import STA

TOL = 1e-10

coord = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def rand_vec(rng, scale=1.0):
    return Multivector.vector(STA, rng.uniform(-scale, scale, 4))


def rand_even(rng):
    return random_multivector(STA, rng, grades=(0, 2, 4), uniform=True)


def close(a, b, tol=TOL):
    return (a - b).max_abs() <= tol


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
