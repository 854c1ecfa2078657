import pytest

from hsze.precision import PrecisionConfig, make_constants
from hsze.theta import LatticeBasis

# acceptance criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def cfg():
    return PrecisionConfig(256)


@pytest.fixture(scope="session")
def consts(cfg):
    return make_constants(cfg)


@pytest.fixture(scope="session")
def square(cfg):
    return LatticeBasis.square(cfg)


@pytest.fixture(scope="session")
def hexagonal(cfg):
    return LatticeBasis.hexagonal(cfg)


def pytest_collection_modifyitems(session, config, items):
    # the exact-H bootstrap gate runs before anything that trusts the symbolic layer
    items.sort(key=lambda it: 0 if "test_00_bootstrap" in it.nodeid else 1)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and rep.failed and "test_00_bootstrap" in item.nodeid:
        item.session.shouldstop = "exact Hurwitz-number bootstrap gate failed"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
