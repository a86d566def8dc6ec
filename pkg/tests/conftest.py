import pytest

from permseq import CensusSettings, cycle_census, make_pabcd
from permseq.perm import iter_generalizations


@pytest.fixture(scope="session")
def p1322():
    return make_pabcd(1, 3, 2, 2)


@pytest.fixture(scope="session")
def collatz(p1322):
    return p1322.inverse()


@pytest.fixture(scope="session")
def p2433():
    return make_pabcd(2, 4, 3, 3)


@pytest.fixture(scope="session")
def collatz_simple():
    return next(iter_generalizations(make_pabcd(2, 2, 1, 3), "simple", 1))[1]


@pytest.fixture(scope="session")
def census_2433_1e5(p2433):
    return cycle_census(p2433, 10**5, CensusSettings(10**8, 20))


# --------------------------------------------------------------------------
# per-criterion PASS/FAIL summary for tests marked ``criterion``

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion exercised by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _criteria.setdefault(n, {"title": title, "failed": [], "ran": False})
    if report.when == "call" or report.outcome != "passed":
        entry["ran"] = entry["ran"] or report.when == "call"
        if hasattr(report, "wasxfail"):
            entry["failed"].append(f"{item.name} (expected failure)")
        elif report.failed:
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        status = "FAIL" if e["failed"] else ("PASS" if e["ran"] else "SKIP")
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {e['title']}")
        for name in e["failed"]:
            terminalreporter.write_line(f"              {name}")
