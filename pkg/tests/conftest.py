import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from helpers import ACCEPTANCE_RESULTS  # noqa: E402

_started = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
    elapsed = time.perf_counter() - _started
    verdict = "PASS" if elapsed < 60 else "FAIL"
    terminalreporter.write_line(f"[{verdict}] C12: full suite wall time {elapsed:.1f} s (< 60 s)")
