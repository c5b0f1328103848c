import functools

import pytest

from trigeom.harness import SpaceSpec, complex_for
from trigeom.search import correlation_group


@functools.cache
def cx(text: str):
    """(space, triangle complex) for a descriptor like 'ag 2 3', cached across tests."""
    return complex_for(SpaceSpec.parse(text))


@functools.cache
def cor(text: str):
    return correlation_group(cx(text)[1].sys, bound=10 ** 9)


@pytest.fixture(scope="session")
def ag23():
    return cx("ag 2 3")


@pytest.fixture(scope="session")
def pg22():
    return cx("pg 2 2")


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
