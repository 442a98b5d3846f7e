import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Record sub-checks of one acceptance criterion and fail if any is false."""

    def record(number, title, checks):
        failed = [label for label, ok in checks if not ok]
        line = f"{'PASS' if not failed else 'FAIL'} criterion {number}: {title}"
        if failed:
            line += " [failed: " + "; ".join(failed) + "]"
        request.config.stash[_LINES].append(line)
        print(line)
        assert not failed, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
