import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+?)(\[.*\])?$")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome == "passed":
                continue
            m = _CRITERION.search(rep.nodeid)
            if m:
                key = int(m.group(1))
                ok = results.get(key, True) and outcome == "passed"
                results[key] = ok
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(f"criterion {key:2d}: {'PASS' if results[key] else 'FAIL'}")
