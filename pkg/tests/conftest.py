import pytest

_LINES = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record the verdict line of an acceptance criterion; it is printed again in the summary."""
    lines = request.config.stash.setdefault(_LINES, {})

    def record(number: int, checks: list[tuple[str, bool]]) -> bool:
        ok = all(good for _, good in checks)
        failed = [name for name, good in checks if not good]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += " (failed: " + "; ".join(failed) + ")"
        lines[number] = line
        print(line)
        for name, good in checks:
            print(f"  [{'ok' if good else 'FAIL'}] {name}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
