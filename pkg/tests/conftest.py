import pytest

from dqalg.pbw import DqAlgebra
from dqalg.scalarfield import FieldConfig


@pytest.fixture(scope="session")
def alg2():
    return DqAlgebra(2)


@pytest.fixture(scope="session")
def alg3():
    return DqAlgebra(3)


@pytest.fixture(scope="session")
def alg2_q1():
    return DqAlgebra(2, FieldConfig.specialized(1))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
