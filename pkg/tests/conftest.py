import re

_CRITERIA: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    _CRITERIA[int(m.group(1))] = f"{'PASS' if report.passed else 'FAIL'}: {m.group(2).replace('_', ' ')}"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {num:2d} {_CRITERIA[num]}")
