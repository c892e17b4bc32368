import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (passed, label); filled by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[n]
        if isinstance(n, int):
            terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {label}")
        else:
            # informational lines, keyed between criteria
            terminalreporter.write_line(f"criterion {int(n)} note: {label}")
