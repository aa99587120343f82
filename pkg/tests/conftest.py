import pytest

# criterion number -> (title, list of per-case outcomes)
_CRITERIA: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker.args
        _CRITERIA.setdefault(number, (title, []))[1].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, results = _CRITERIA[number]
        status = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({sum(results)}/{len(results)} cases)")
