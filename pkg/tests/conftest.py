import pytest

_acceptance: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("acceptance") and (rep.when == "call" or rep.failed):
        title = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance.append((title, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for title, status in _acceptance:
        terminalreporter.write_line(f"{status}  {title}")
