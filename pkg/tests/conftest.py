import pytest

from ncstone import catalog


@pytest.fixture(scope="session")
def i2():
    return catalog.semigroup("I_2")


@pytest.fixture(scope="session")
def i3():
    return catalog.semigroup("I_3")


@pytest.fixture(scope="session")
def rook():
    return catalog.semigroup("Rook(2,Z2)")
