import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


class _Criterion:
    def __init__(self, name):
        self.name = name
        self.failures = []
        self.bad = 0
        self.checked = 0
        self.finished = False

    def check(self, ok, detail=""):
        self.checked += 1
        if not ok:
            self.bad += 1
            if len(self.failures) < 3:
                self.failures.append(detail)
        return ok

    def finish(self):
        self.finished = True
        assert self.checked > 0, "no checks ran"
        assert not self.bad, f"{self.bad} of {self.checked} checks failed: {self.failures}"

    def line(self):
        if not self.finished:
            return f"[FAIL] {self.name} (aborted after {self.checked} checks)"
        status = "PASS" if not self.bad else "FAIL"
        tail = f" ({self.checked} checks, {self.bad} failed)"
        if self.failures:
            tail += " e.g. " + "; ".join(map(str, self.failures))
        return f"[{status}] {self.name}{tail}"


@pytest.fixture
def criterion(request):
    """Collects checks for one acceptance criterion and reports a single line."""
    c = _Criterion(request.node.name.replace("test_", "", 1))
    yield c
    line = c.line()
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
