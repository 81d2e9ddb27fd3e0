import pytest

from abcscan import kernels

_CRITERIA = []


@pytest.fixture(params=kernels.available())
def kern(request):
    return kernels.load(request.param)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        _CRITERIA.append((marker.args[0], report.passed, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, duration in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  ({duration:.2f}s)")
