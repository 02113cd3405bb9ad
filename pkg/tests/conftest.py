import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): acceptance criterion; prints one PASS/FAIL line"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        marker = item.get_closest_marker("criterion")
        if marker:
            status = "PASS" if rep.passed else "FAIL"
            print(f"\nACCEPTANCE {marker.args[0]}: {status}", flush=True)
