try:
    from tests._verdicts import VERDICTS
except ImportError:  # rootdir layouts that import conftest outside the package
    from _verdicts import VERDICTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
