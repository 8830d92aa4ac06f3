import pytest

from mocklie.catalog import get_algebra
from mocklie.enveloping import enveloping_basis
from mocklie.free import build_free_quotient


@pytest.fixture(scope="session")
def m44():
    return build_free_quotient(("a", "b", "c"), (3, 3, 2))


@pytest.fixture(scope="session")
def m44_gb(m44):
    return enveloping_basis(m44.algebra)


@pytest.fixture(scope="session")
def a12():
    return get_algebra("A12")


@pytest.fixture(scope="session")
def a13():
    return get_algebra("A13")


_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion: criterion(n, ok, detail)."""

    def record(number, ok, detail=""):
        _ACCEPTANCE[number] = (bool(ok), detail)
        assert ok, f"criterion {number}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
