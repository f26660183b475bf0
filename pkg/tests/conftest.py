import contextlib
import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Context manager recording one pass/fail line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number: int, text: str):
        try:
            yield
        except BaseException:
            _CRITERIA.append(f"criterion {number:>2}: FAIL  {text}")
            raise
        _CRITERIA.append(f"criterion {number:>2}: PASS  {text}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_CRITERIA, key=lambda s: int(s.split(":")[0].split()[1])):
        terminalreporter.write_line(line)
