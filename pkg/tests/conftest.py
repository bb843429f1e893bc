import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--long", action="store_true", default=False,
        help="run the slow reproduction tests (large powers, full operator "
             "rediscovery)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip_long = pytest.mark.skip(reason="slow reproduction test; pass --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                rows.append((nodeid.split("::")[-1], outcome.upper()))
    if rows:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, outcome in sorted(rows):
            terminalreporter.write_line(f"{outcome:8s} {name}")
