from hypothesis import settings

# acceptance tests pin their own example counts
settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "label(name): acceptance criterion name")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.rep_call = report


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(results, key=lambda s: int(s.split()[0])):
        ok, detail = results[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {label}: {detail}")
