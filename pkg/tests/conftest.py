import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from deeptkt.pcgroup import GroupParams, build_group

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@lru_cache(maxsize=None)
def cached_group(a, n, w, z):
    return build_group(GroupParams(a=a, n=n, w=w, z=z))


def group_of(p: GroupParams):
    return cached_group(p.a, p.n, p.w, p.z)


@pytest.fixture
def grp():
    return group_of


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
