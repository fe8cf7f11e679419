import os
from pathlib import Path

import numpy as np
import pytest

from wrdea.battery import build_battery, toy_single_input, toy_two_inputs
from wrdea.data import DeaInstance, RestrictionSpec, WeightRestrictions, compile_restrictions

DATA_DIR = Path(__file__).parent / "data"

_ACCEPTANCE = []


class AcceptanceLog:
    """Collects one verdict per acceptance criterion for the terminal summary."""

    def record(self, name, passed, detail=""):
        _ACCEPTANCE.append(("PASS" if passed else "FAIL", name, detail))

    def skip(self, name, reason):
        _ACCEPTANCE.append(("SKIP", name, reason))


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for verdict, name, detail in _ACCEPTANCE:
        line = f"{verdict} {name}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def battery():
    return build_battery()


@pytest.fixture
def abec():
    return toy_two_inputs()


@pytest.fixture
def abc():
    return toy_single_input()


@pytest.fixture
def single():
    inst = DeaInstance(["A"], [[2.0], [3.0]], [[5.0]])
    return inst, WeightRestrictions.none(2, 1)


SCHOOL_RESTRICTIONS = [
    RestrictionSpec("input", {1: 1.0, 2: -1 / 3}),
    RestrictionSpec("input", {2: 1.0, 3: -0.5}),
    RestrictionSpec("input", {3: 1.0, 4: -1.0}),
]


def school_data_path():
    env = os.environ.get("WRDEA_SCHOOL_DATA")
    if env:
        return Path(env)
    default = DATA_DIR / "schools.csv"
    return default if default.exists() else None


@pytest.fixture(scope="session")
def schools():
    """The 80-school sample (4 inputs, 1 output) if a copy is available locally."""
    from wrdea.io import parse_dataset

    path = school_data_path()
    if path is None or not path.exists():
        pytest.skip("school dataset not available (set WRDEA_SCHOOL_DATA or add "
                    "tests/data/schools.csv)")
    inst = parse_dataset(path)
    return inst, compile_restrictions(SCHOOL_RESTRICTIONS, inst.m, inst.s)


def random_instance(rng, n, m, s, low=1, high=9):
    X = rng.integers(low, high + 1, size=(m, n)).astype(float)
    Y = rng.integers(low, high + 1, size=(s, n)).astype(float)
    return DeaInstance([f"D{j}" for j in range(n)], X, Y)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
