import json
import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from incidence_lie.preorder import Preorder

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"

# the fixture corpus; the first five are the named desk-scale fixtures
PREORDERS = {
    "chain3": Preorder.chain(3),
    "vee": Preorder.from_generators(3, [(0, 1), (0, 2)]),
    "twochain": Preorder.from_generators(4, [(0, 1), (2, 3)]),
    "loop2": Preorder.from_generators(2, [(0, 1), (1, 0)]),
    "isolated": Preorder.from_generators(3, [(0, 1)]),
}
EXTRA_PREORDERS = {
    # triangle 0<1<2 with a pendant 3 below 2 only: two classes in one component
    "tailed_triangle": Preorder.from_generators(4, [(0, 1), (1, 2), (3, 2)]),
    # zigzag 0<1>2<3: a path, three bridge classes
    "zigzag": Preorder.from_generators(4, [(0, 1), (2, 1), (2, 3)]),
    # equivalent pair 0~1 below 2, and 3 below 2
    "loop_tail": Preorder.from_generators(4, [(0, 1), (1, 0), (1, 2), (3, 2)]),
    "diamond": Preorder.from_generators(4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
    "star": Preorder.from_generators(5, [(0, 1), (0, 2), (0, 3), (4, 0)]),
}
ALL_PREORDERS = {**PREORDERS, **EXTRA_PREORDERS}


@pytest.fixture
def chain3():
    return PREORDERS["chain3"]


@pytest.fixture
def vee():
    return PREORDERS["vee"]


@pytest.fixture
def twochain():
    return PREORDERS["twochain"]


@pytest.fixture
def loop2():
    return PREORDERS["loop2"]


@pytest.fixture
def isolated():
    return PREORDERS["isolated"]


def load_fixture(name: str):
    return json.loads((FIXTURES / name).read_text())


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
