import re

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    number = int(m.group(1))
    title = m.group(2).replace("_", " ")
    if report.when == "call" or report.outcome == "failed" or report.skipped:
        prev = _outcomes.get(number, (None, None))[0]
        if prev == "FAIL":
            return
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _outcomes[number] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        outcome, title = _outcomes[number]
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {title}")
