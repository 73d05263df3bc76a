import json
from pathlib import Path

import pytest

from cluster_nz.cluster import mutation_sequence

FIXTURES = Path(__file__).parent / "fixtures"

A2_B = [[0, -1], [1, 0]]
MARKOV_B = [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]
LOOP5_B = [
    [0, -1, 2, 2, -1],
    [1, 0, -3, 0, 2],
    [-2, 3, 0, -3, 2],
    [-2, 0, 3, 0, -1],
    [1, -2, -2, 1, 0],
]
P5 = "(5 4 3 2 1)"


def loop5(T: int):
    return mutation_sequence(LOOP5_B, [1] * T, [P5] * T)


def load_fixture(name: str):
    data = json.loads((FIXTURES / name).read_text())
    return mutation_sequence(data["B"], data["m"], data.get("sigma"))


@pytest.fixture
def a2():
    return mutation_sequence(A2_B, [1, 2])


@pytest.fixture
def a2_prime():
    return mutation_sequence(A2_B, [2, 1, 2], [[1, 2], [1, 2], "(1 2)"])


@pytest.fixture
def figure_eight():
    return mutation_sequence(MARKOV_B, [2, 1], [[1, 2, 3], "(3 2 1)"])


@pytest.fixture
def gamma3():
    return loop5(3)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
