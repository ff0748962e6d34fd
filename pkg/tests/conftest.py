from pathlib import Path

import pytest

CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, title = mark.args
            CRITERIA.setdefault(number, {"title": title, "outcomes": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if not mark:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        CRITERIA[mark.args[0]]["outcomes"].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        entry = CRITERIA[number]
        outcomes = entry["outcomes"]
        if not outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if all(ok for _, ok in outcomes) else "FAIL"
        failed = [name for name, ok in outcomes if not ok]
        suffix = f"  failing: {', '.join(failed)}" if failed else ""
        terminalreporter.write_line(f"criterion {number:>2}: {status:<7} {entry['title']} "
                                    f"({len(outcomes)} tests){suffix}")


@pytest.fixture
def points_dir():
    return Path(__file__).resolve().parent.parent / "points"
