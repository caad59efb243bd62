import re
from collections import OrderedDict

_criteria: "OrderedDict[str, list[str]]" = OrderedDict()
_PATTERN = re.compile(r"test_criterion_(\d+)_(\w+?)(\[|$)")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    match = _PATTERN.search(report.nodeid.split("::")[-1])
    if match:
        key = f"{int(match.group(1)):2d} {match.group(2)}"
        _criteria.setdefault(key, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key, outcomes in sorted(_criteria.items()):
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {key}: {verdict} ({outcomes.count('passed')}/{len(outcomes)} cases)")
