import os
import random

import pytest
from hypothesis import settings

DEFAULT_SEED = 20161015

settings.register_profile("repro", derandomize=True, database=None)
settings.load_profile("repro")

# criterion number -> (title, passed); filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=None, help="seed for randomized property tests")


@pytest.fixture(scope="session")
def seed(request):
    opt = request.config.getoption("--seed")
    if opt is not None:
        return opt
    return int(os.environ.get("CUBIC_K3_SEED", DEFAULT_SEED))


@pytest.fixture
def rng(seed):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        title, ok = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}")
