import os
import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--quick", action="store_true", help="exhaustive checks stop at 6 vertices")


@pytest.fixture(scope="session")
def max_vertices(request):
    return 6 if request.config.getoption("--quick") else 7


@pytest.fixture
def rng():
    return random.Random(int(os.environ.get("RAAG_SEED", "20240611")))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
