import numpy as np
import pytest

from ksteady.model import REFERENCE_PARAMS, Family, SteadyState
from ksteady.presets import ANALYTIC, OFFSETS, PRESETS
from ksteady.solver import run

ACCEPTANCE_LINES = []


@pytest.fixture
def params():
    return REFERENCE_PARAMS


@pytest.fixture(scope="session")
def states():
    """The four explicit steady states behind the published boundary data."""
    return {Family(n): SteadyState.from_b(n, REFERENCE_PARAMS, OFFSETS[n]) for n in ANALYTIC}


@pytest.fixture(scope="session")
def preset_runs():
    """Each preset integrated to t = 2 on the reference mesh, computed once per session."""
    cache = {}

    def get(name):
        if name not in cache:
            cfg = PRESETS[name].config()
            cache[name] = (cfg, *run(cfg))
        return cache[name]

    return get


@pytest.fixture
def acceptance_log():
    def log(criterion, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


GRID101 = np.linspace(0.0, 1.0, 101)
