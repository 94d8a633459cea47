import pytest

_outcomes: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    marks = getattr(report, "criteria", None)
    if not marks:
        return
    failed = report.failed
    if report.when == "call" or failed or report.skipped:
        for n in marks:
            _outcomes.setdefault(n, []).append("fail" if failed else "skip" if report.skipped else "pass")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    outcome.get_result().criteria = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        states = _outcomes[n]
        verdict = "FAIL" if "fail" in states else "SKIP" if "pass" not in states else "PASS"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict} ({states.count('pass')}/{len(states)} tests passed)")
