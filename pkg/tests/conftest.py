import warnings
from pathlib import Path

import numpy as np
import pytest

from igc.cryptosystem import InsecureParameters, keygen
from igc.goppa import build_goppa

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def toy_code():
    return build_goppa(3, 2, 9, 3, np.random.default_rng(100))


@pytest.fixture(scope="session")
def small_code():
    return build_goppa(3, 3, 27, 4, np.random.default_rng(101))


@pytest.fixture(scope="session")
def mid_code():
    return build_goppa(5, 3, 125, 10, np.random.default_rng(102))


def quiet_keygen(*args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InsecureParameters)
        return keygen(*args)


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str = "") -> bool:
    """Log one acceptance verdict; the lines are repeated in the terminal summary."""
    line = f"{'PASS' if ok else 'FAIL'}  {criterion}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
