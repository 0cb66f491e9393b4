import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from growthforge import GroupSpec  # noqa: E402

_CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion."""

    def record(key, passed, detail=""):
        _CRITERIA[key] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split()[0])):
        ok, detail = _CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}  {detail}")


SOL = [[2, 1], [1, 1]]
FIB = [[1, 1], [1, 0]]
HEISENBERG = [[1, 1], [0, 1]]
ROTATION = [[0, -1], [1, 0]]


@pytest.fixture
def sol():
    return GroupSpec.split_extension(SOL)


@pytest.fixture
def z_spec():
    return GroupSpec.matrix_group({"g": [[1, 1], [0, 1]]})


@pytest.fixture
def z2_spec():
    return GroupSpec.matrix_group({
        "a": [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        "b": [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
    })
