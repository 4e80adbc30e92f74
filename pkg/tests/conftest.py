import pytest

from toric_ccc import bundled

FAN_NAMES = ["p1", "p2", "p1xp1", "p112", "football", "gerby_p1", "p2_subdivided", "quadrant"]
COMPLETE = ["p1", "p2", "p1xp1", "p112", "football", "gerby_p1", "p2_subdivided"]
PLANAR = ["p2", "p1xp1", "p112", "p2_subdivided", "quadrant"]

_results = {}


@pytest.fixture(scope="session")
def fans():
    return {name: bundled(name) for name in FAN_NAMES}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    key = (number, title)
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if rep.when == "call" or failed:
        prev = _results.get(key, True)
        _results[key] = prev and not failed


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_results.items(), key=lambda kv: str(kv[0][0]).zfill(4)):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
