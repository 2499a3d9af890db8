import pytest

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def criterion(request):
    """Record named sub-checks and emit one PASS/FAIL line for the criterion."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    class Recorder:
        def __init__(self):
            self.checks = []

        def check(self, label, ok, detail=""):
            self.checks.append((label, bool(ok), detail))
            return bool(ok)

        def finish(self, title):
            ok = all(c[1] for c in self.checks)
            failed = [f"{label} ({detail})" for label, good, detail in self.checks if not good]
            line = f"[{'PASS' if ok else 'FAIL'}] {title}"
            if failed:
                line += " :: failed " + "; ".join(failed)
            lines.append(line)
            print("\n" + line)
            for label, good, detail in self.checks:
                print(f"    {'ok ' if good else 'BAD'} {label}: {detail}")
            assert ok, line

    return Recorder()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
