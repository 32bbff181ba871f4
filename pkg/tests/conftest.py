"""Shared test plumbing: the acceptance-criterion result banner."""

CRITERIA: dict[int, tuple[str, str, float]] = {}


def record_criterion(num: int, name: str, status: str, elapsed: float) -> None:
    CRITERIA[num] = (name, status, elapsed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        name, status, elapsed = CRITERIA[num]
        terminalreporter.write_line(
            f"[criterion {num:02d}] {name}: {status} ({elapsed:.2f}s)")
