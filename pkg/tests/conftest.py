import re

import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    match = _CRITERION.match(item.name)
    if match is None:
        return
    if report.when == "call" or report.failed:
        doc = (item.function.__doc__ or "").strip().splitlines()[0]
        number = int(match.group(1))
        if _outcomes.get(number, ("PASS",))[0] != "FAIL":
            _outcomes[number] = ("PASS" if report.passed else "FAIL", doc)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        verdict, doc = _outcomes[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {doc}")
