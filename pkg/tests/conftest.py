import numpy as np
import pytest

from dirac_osc import SimConfig, initial_state

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""
    def _report(label: str, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        print(ACCEPTANCE_LINES[-1])
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def packet_fast():
    return initial_state(SimConfig(N=20, r=0.5))


@pytest.fixture(scope="session")
def packet_slow():
    return initial_state(SimConfig(N=20, r=0.001))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240611)
