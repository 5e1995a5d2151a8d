from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from twistlab import (compose_twists, extension_factor, jordanian_twist, make_carrier_L,
                      make_gl)

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

JOBS = Path(__file__).resolve().parent.parent / "src" / "twistlab" / "data" / "jobs"
TEST_JOBS = Path(__file__).resolve().parent / "data" / "jobs"


def pet_sl4(order=4):
    g = make_gl(4, weight=(0, 0, 1, 1))
    j = jordanian_twist(g, "H_12", "E_24", -1, 1, order)
    ext = extension_factor("P'", g, {"A": "E_23", "B": "E_34"}, order, j.sigma)
    return g, j, ext, compose_twists(ext, j)


def carrier_chain(params, kind, order=4):
    L = make_carrier_L(*params)
    j = jordanian_twist(L, "H", "E", params[3], params[2], order)
    ext = extension_factor(kind, L, {"A": "A", "B": "B"}, order, j.sigma)
    return L, j, ext, compose_twists(ext, j)


@pytest.fixture(scope="session")
def sl4_pet():
    return pet_sl4()


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.name.startswith("test_criterion_") and (rep.when == "call" or rep.failed):
        if rep.failed or item.name not in _criteria:
            _criteria[item.name] = "FAIL" if rep.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        num, label = name[len("test_criterion_"):].split("_", 1)
        terminalreporter.write_line("criterion %2d %-28s %s" % (int(num), label, _criteria[name]))
