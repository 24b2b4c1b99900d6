import pytest
from hypothesis import HealthCheck, settings

from sgroups.extension import ExtSGroup
from sgroups.models import ModelDescriptor, make_int_sgroup, make_pp_sgroup, make_trivial_sgroup
from sgroups.regions import Interval
from sgroups.spaces import five_region_sspace
from sgroups.tess import build_bar, build_tilde

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

J = Interval(-1, 1)
SMALL = dict(max_order=2, max_degree=2, max_breaks=2)


@pytest.fixture(scope="session")
def int_ext():
    return ExtSGroup(make_int_sgroup())


@pytest.fixture(scope="session")
def pp_group():
    return make_pp_sgroup(J, ModelDescriptor("pp", J, **SMALL))


@pytest.fixture(scope="session")
def pp_ext(pp_group):
    return ExtSGroup(pp_group)


@pytest.fixture(scope="session")
def z5_ext():
    return ExtSGroup(make_trivial_sgroup(5))


@pytest.fixture(scope="session")
def pp5():
    return five_region_sspace(ModelDescriptor("pp", **SMALL))


@pytest.fixture(scope="session")
def tilde5(pp5):
    return build_tilde(pp5, samples=10)


@pytest.fixture(scope="session")
def bar5(tilde5):
    return build_bar(tilde5)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
