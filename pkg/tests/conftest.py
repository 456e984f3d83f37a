from pathlib import Path

import pytest

from ftloops import parse_tree

MODELS = Path(__file__).resolve().parent.parent / "models"


def load(name: str):
    return parse_tree((MODELS / name).read_text())


@pytest.fixture
def two_gate():
    return load("two_gate_loop.ft")


@pytest.fixture
def two_gate_repairable():
    return load("two_gate_repairable.ft")


@pytest.fixture
def ordinary():
    return load("ordinary_loop.ft")


@pytest.fixture
def yang():
    return load("yang_four_gate.ft")


@pytest.fixture
def nonlinear():
    return load("three_gate_nonlinear.ft")


@pytest.fixture
def coefficients():
    return load("two_gate_coefficients.ft")


@pytest.fixture
def swap():
    return load("swap.ft")


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.RESULTS, key=lambda s: int(s[5:7])):
            terminalreporter.write_line(line)
