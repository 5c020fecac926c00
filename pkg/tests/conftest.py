import contextlib

import numpy as np
import pytest

# Lines recorded by the acceptance suite, echoed after the run so the
# per-criterion verdicts survive pytest's output capture.
ACCEPTANCE_LINES: list[str] = []


@contextlib.contextmanager
def criterion(tag: str, description: str):
    """Record one acceptance verdict line, preserving the failure."""
    info: dict = {}
    try:
        yield info
    except BaseException as exc:
        note = info.get("note", "")
        detail = f" ({note})" if note else ""
        ACCEPTANCE_LINES.append(
            f"{tag} FAIL - {description}{detail}: {type(exc).__name__}: {exc}"
        )
        raise
    note = info.get("note", "")
    detail = f" ({note})" if note else ""
    ACCEPTANCE_LINES.append(f"{tag} PASS - {description}{detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
