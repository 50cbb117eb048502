def pytest_configure(config):
    config._nilcyc_acceptance = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config._nilcyc_acceptance
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
