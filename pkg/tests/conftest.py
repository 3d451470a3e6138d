import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# filled in by the acceptance suite: criterion number -> (passed, seconds, budget, note)
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, budget, note = ACCEPTANCE[k]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {secs:6.2f}s (budget {budget}s)  {note}")
