from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from selfconf import (
    InfluenceNetwork,
    VarianceVector,
    centrality,
    load_scenario,
    pareto_set,
)

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"


@pytest.fixture(scope="session")
def scen4():
    return load_scenario(FIXTURES / "paper4.json")


@pytest.fixture(scope="session")
def scen3():
    return load_scenario(FIXTURES / "tri3.json")


@pytest.fixture(scope="session")
def net4(scen4) -> InfluenceNetwork:
    return scen4.network


@pytest.fixture(scope="session")
def sig4(scen4) -> VarianceVector:
    return scen4.sigma2


@pytest.fixture(scope="session")
def pi4(net4):
    return centrality(net4)


@pytest.fixture(scope="session")
def ray4(pi4, sig4):
    return pareto_set(pi4, sig4)


@pytest.fixture(scope="session")
def net3(scen3) -> InfluenceNetwork:
    return scen3.network


@pytest.fixture(scope="session")
def sig3(scen3) -> VarianceVector:
    return scen3.sigma2


@pytest.fixture(scope="session")
def pi3(net3):
    return centrality(net3)


@pytest.fixture(scope="session")
def ray3(pi3, sig3):
    return pareto_set(pi3, sig3)


@pytest.fixture(scope="session")
def rng_factory():
    def make(seed: int) -> np.random.Generator:
        return np.random.default_rng(seed)

    return make


def pytest_terminal_summary(terminalreporter):
    import helpers

    if helpers.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in helpers.ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
