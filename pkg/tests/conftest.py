import numpy as np
import pytest

ACCEPTANCE_PREFIX = "tests/test_acceptance.py::test_criterion_"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if nodeid.startswith(ACCEPTANCE_PREFIX) and (rep.when == "call" or outcome == "error"):
                rows.append((nodeid[len(ACCEPTANCE_PREFIX):], "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(rows):
            terminalreporter.write_line(f"{status}  criterion {name}")
