import pytest

from isoradix.cache import TraceCache
from isoradix.curvefile import ingest_curves


@pytest.fixture(scope="session")
def curves():
    return {E.label: E for E in ingest_curves()}


@pytest.fixture(scope="session")
def shared_cache(tmp_path_factory):
    """One trace cache for the whole run so large sweeps are computed once."""
    return TraceCache(tmp_path_factory.mktemp("traces"))


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        outcome = _acceptance[name]
        label = name.removeprefix("test_criterion_").replace("_", " ")
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  criterion {label}")
