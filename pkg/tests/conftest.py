import re

CRITERION = re.compile(r"test_acceptance\.py::test_c(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = CRITERION.search(str(getattr(rep, "nodeid", "")))
            if m and getattr(rep, "when", "call") == "call":
                rows.append((int(m.group(1)), m.group(2), status == "passed"))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for num, name, ok in sorted(rows):
            terminalreporter.write_line(
                f"criterion {num:2d} ({name}): {'PASS' if ok else 'FAIL'}")
