import pytest

from ringgroom.constructions import fixture


@pytest.fixture(scope="session")
def ex1():
    return fixture("Ex1")
