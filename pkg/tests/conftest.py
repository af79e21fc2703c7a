import pytest

_LINES = pytest.StashKey[dict]()


@pytest.fixture
def require_criterion(request):
    """Print a criterion's report, keep its verdict for the summary, and fail if it failed."""
    lines = request.config.stash.setdefault(_LINES, {})

    def record(crit):
        print(crit.report())
        lines[crit.key] = f"{crit.key} {'PASS' if crit.passed else 'FAIL'}  {crit.title}"
        if not crit.passed:
            pytest.fail(crit.report(), pytrace=False)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=lambda k: int(k[1:])):
        terminalreporter.write_line(lines[key])
