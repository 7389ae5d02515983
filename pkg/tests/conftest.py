import pytest

from fourierpdf import build_model
from fourierpdf.series import UNIFORM_SUM_TRUNCATION

UNIFORM_NS = sorted(UNIFORM_SUM_TRUNCATION)
SKEWNESS_NS = list(range(4, 23, 2))


@pytest.fixture(scope="session")
def uniform4():
    return build_model("uniform-sum", 4)


@pytest.fixture(scope="session")
def skew6():
    return build_model("skewness", 6)


def shipped_models():
    """Every (family, n) configuration that a published table uses."""
    return [("uniform-sum", n) for n in UNIFORM_NS] + [("skewness", n) for n in SKEWNESS_NS]


_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None or (report.when != "call" and not report.failed and not report.skipped):
        return
    number, title = marker
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": [], "skipped": 0})
    if report.failed:
        entry["failed"].append(report.nodeid.split("::")[-1])
    elif report.skipped:
        entry["skipped"] += 1
    elif report.when == "call":
        entry["passed"] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        failed = entry["failed"]
        total = entry["passed"] + len(failed)
        status = "FAIL" if failed or not total else "PASS"
        line = f"{status} criterion {number:>2}: {entry['title']} ({entry['passed']}/{total} checks)"
        if failed:
            shown = ", ".join(failed[:6]) + (", ..." if len(failed) > 6 else "")
            line += f"; failing: {shown}"
        terminalreporter.write_line(line)
