import functools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from optlrc.construction import build_generator, make_params  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def code(n, k, r, delta=2, base="prime:13"):
    """Generator matrices are deterministic, so build each one once per session."""
    return build_generator(make_params(n, k, r, delta, base))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
