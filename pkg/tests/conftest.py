import pytest


def pytest_addoption(parser):
    parser.addoption("--include-long", action="store_true", default=False,
                     help="run the extended-scale searches")


def pytest_configure(config):
    config.addinivalue_line("markers", "long: extended-scale searches")
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--include-long"):
        return
    skip = pytest.mark.skip(reason="needs --include-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.skipped):
        _ACCEPTANCE[number] = (title, report.outcome)
    elif report.when == "setup" and report.failed:
        _ACCEPTANCE[number] = (title, "failed")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        word = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP (needs --include-long)"}[outcome]
        terminalreporter.write_line(f"criterion {number:2d}: {word:5s} {title}")
