import random

import pytest
from hypothesis import HealthCheck, settings

from cflreach.grammar import dyck_grammar, to_cnf
from cflreach.instances import AeMonoInstance, TriangleInstance

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture
def dyck1():
    return dyck_grammar(1)


@pytest.fixture
def dyck1_cnf():
    return to_cnf(dyck_grammar(1))


@pytest.fixture
def k3():
    return TriangleInstance(3, frozenset({(0, 1), (1, 2), (0, 2)}))


@pytest.fixture
def c4():
    return TriangleInstance(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))


@pytest.fixture
def rng():
    return random.Random(20240611)


def mono_k3(c0, c1, c2):
    return AeMonoInstance(3, {(0, 1): c0, (1, 2): c1, (0, 2): c2})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = sorted(getattr(mod, "RESULTS", []), key=lambda s: int(s.split("criterion ")[1].split(":")[0]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
