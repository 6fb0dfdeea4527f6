import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    prev = _criteria.get(number, (title, None))[1]
    if rep.failed:
        status = "FAIL"
    elif rep.when == "call" and prev is None:
        status = "SKIP" if rep.skipped else "PASS"
    else:
        status = prev
    _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status or 'NOT RUN'}  {title}")
