import pytest

from polyprint import regular_octahedron
from polyprint.core import Mesh, Winding

_criteria = []


@pytest.fixture
def octahedron():
    return regular_octahedron(1.0)


@pytest.fixture
def triangle():
    return Mesh(((0, 0, 0), (1, 0, 0), (0, 1, 0)), ((0, 1, 2),), Winding.CCW_FROM_OUTSIDE)


@pytest.fixture
def scaled_octahedron():
    from polyprint.orient import flatten, scale_uniform

    return scale_uniform(flatten(regular_octahedron(1.0), 0), 20.0)


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance test."""
    entry = {"name": request.node.name, "doc": request.function.__doc__ or "", "failed": False}
    _criteria.append(entry)
    return entry


def pytest_runtest_makereport(item, call):
    if call.when == "call" and call.excinfo is not None:
        for entry in _criteria:
            if entry["name"] == item.name:
                entry["failed"] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _criteria:
        ok = not entry["failed"]
        first = entry["doc"].strip().splitlines()[0] if entry["doc"].strip() else entry["name"]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {first}")

