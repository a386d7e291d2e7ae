import numpy as np
import pytest

_criteria = {}
_details = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and rep.passed):
        return
    number, text = marker.args
    ok = rep.passed and not rep.skipped
    prev = _criteria.get(number, (text, True))
    _criteria[number] = (text, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
        for line in _details.get(number, []):
            terminalreporter.write_line(f"    {line}")


@pytest.fixture
def measured(request):
    """Record a measured value under the test's criterion for the summary."""
    marker = request.node.get_closest_marker("criterion")

    def note(text):
        _details.setdefault(marker.args[0], []).append(text)

    return note


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_sym(r, rng):
    a = rng.normal(size=(r, r))
    return 0.5 * (a + a.T)


def random_spd(r, rng):
    a = rng.normal(size=(r, r))
    return a @ a.T + 0.5 * np.eye(r)
