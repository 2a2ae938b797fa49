import sys


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance ledger collected by test_acceptance, if it ran."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get(
        "tests.test_acceptance"
    )
    if mod is None:
        return
    lines = getattr(mod, "_LINES", None)
    if not lines:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for line in lines:
        terminalreporter.write_line("  " + line)
    missing = [
        num for num in sorted(mod.CRITERIA) if not any(f" {num}: " in l for l in lines)
    ]
    for num in missing:
        terminalreporter.write_line(f"  NOT RUN {num}: {mod.CRITERIA[num]}")
