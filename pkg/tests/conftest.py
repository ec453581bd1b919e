import numpy as np
import pytest

_acceptance = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def plus_state():
    return np.full((2, 2), 0.5, dtype=complex)


@pytest.fixture
def tilted_qubit():
    # r cos(theta) = r sin(theta) = 1/2
    return np.array([[0.75, 0.25], [0.25, 0.25]], dtype=complex)


@pytest.fixture
def equatorial_qubit():
    return np.array([[0.5, 0.25], [0.25, 0.5]], dtype=complex)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _acceptance.append((props["criterion"], report.outcome, props.get("summary", ""), props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, outcome, summary, detail in sorted(_acceptance):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{verdict}] criterion {number}: {summary}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
