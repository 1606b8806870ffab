import pytest

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    entry = _CRITERIA.setdefault(n, {"title": title, "passed": 0, "failed": []})
    if rep.when == "call" or rep.failed:
        if rep.passed:
            entry["passed"] += 1
        elif rep.failed:
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {n:>2} {status}  {e['title']}  ({e['passed']} passed, {len(e['failed'])} failed)"
        if e["failed"]:
            line += "  failing: " + ", ".join(e["failed"])
        tr.write_line(line)
