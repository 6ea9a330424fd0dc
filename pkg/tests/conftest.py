import sys

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings

from hyperf.conj_su2 import ConjSU2
from hyperf.dunkl_ramirez import DunklRamirez

settings.register_profile("hyperf", deadline=None, derandomize=True, max_examples=40,
                          print_blob=True)
settings.load_profile("hyperf")


@pytest.fixture(scope="session")
def su2():
    return ConjSU2()


@pytest.fixture(scope="session")
def ha():
    return DunklRamirez(Fraction(1, 3))


@pytest.fixture(scope="session", params=["conj_su2", "dunkl_1/3", "dunkl_1/4"])
def instance(request):
    if request.param == "conj_su2":
        return ConjSU2()
    return DunklRamirez(request.param.split("_")[1])


def random_coeffs(seed, n, count=None, decay=0.0, instance=None):
    rng = np.random.default_rng(seed)
    shape = (n,) if count is None else (count, n)
    c = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    if decay and instance is not None:
        c = c * np.exp(-decay * instance.log_hyperdims(n - 1))
    return c


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.VERDICTS:
            terminalreporter.write_line(line)
