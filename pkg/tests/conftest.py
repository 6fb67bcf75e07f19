import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hsmoments.assembly import CollisionModel
from hsmoments.indices import build_index_set

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

KRAMERS_GENERATORS = [(1, 0, 0), (3, 0, 0), (1, 0, 2)]
JUMP_GENERATORS = [(0, 0, 0), (2, 0, 0), (0, 0, 2)]

MODELS = [CollisionModel.bgk(), CollisionModel.shakhov()]


@st.composite
def c1_generators(draw, max_order=20):
    """Random generator lists with zero normal component, plus an order."""
    order = draw(st.integers(min_value=3, max_value=max_order))
    count = draw(st.integers(min_value=1, max_value=5))
    gens = []
    for _ in range(count):
        g1 = draw(st.integers(min_value=0, max_value=order))
        g3 = draw(st.integers(min_value=0, max_value=order - g1))
        gens.append((g1, 0, g3))
    return gens, order


@st.composite
def c1_index_sets(draw, max_order=20):
    gens, order = draw(c1_generators(max_order))
    return build_index_set(gens, order, 3)


def random_c1_set(rng: np.random.Generator, max_order: int = 20):
    """Same distribution as :func:`c1_index_sets`, driven by a numpy generator."""
    order = int(rng.integers(3, max_order + 1))
    gens = []
    for _ in range(int(rng.integers(1, 6))):
        g1 = int(rng.integers(0, order + 1))
        g3 = int(rng.integers(0, order - g1 + 1))
        gens.append((g1, 0, g3))
    return build_index_set(gens, order, 3)


@pytest.fixture
def kramers4():
    return build_index_set(KRAMERS_GENERATORS, 4, 3)


@pytest.fixture
def jump3():
    return build_index_set(JUMP_GENERATORS, 3, 3)


@pytest.fixture
def b_full():
    return 2.0 / math.sqrt(2.0 * math.pi)


_REPORT_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_REPORT_KEY] = []


@pytest.fixture
def report(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash[_REPORT_KEY]

    def _record(label: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        lines.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_REPORT_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
