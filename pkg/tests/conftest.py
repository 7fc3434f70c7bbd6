import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long-running checks (m=11/13 mixed discriminants, large table rows)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; enable with --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 13):
        status, detail = RESULTS.get(n, ("NOT RUN", "skipped or deselected (slow checks need --runslow)"))
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {detail}")
