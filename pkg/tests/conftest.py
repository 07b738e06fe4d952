import sys
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_OUTCOMES: dict[int, list] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _OUTCOMES[props["criterion"]].append(
            (report.nodeid.split("::")[-1], report.outcome, props.get("measured")))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        parts = _OUTCOMES[n]
        ok = all(outcome == "passed" for _, outcome, _ in parts)
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} "
                      f"({sum(o == 'passed' for _, o, _ in parts)}/{len(parts)} parts)")
        for name, outcome, measured in parts:
            if outcome != "passed" or measured is not None:
                detail = f"  {measured}" if measured is not None else ""
                tr.write_line(f"    {outcome.upper():7s} {name}{detail}")
