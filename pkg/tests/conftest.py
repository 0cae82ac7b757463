import pytest
from hypothesis import settings

settings.register_profile("suite", derandomize=True, max_examples=50, deadline=None)
settings.load_profile("suite")

from sumrank import FieldTower, FiniteField


@pytest.fixture(scope="session")
def f4():
    return FiniteField(2, 2, (1, 1, 1))


@pytest.fixture(scope="session")
def f9():
    return FiniteField(3, 2, (1, 0, 1))


@pytest.fixture(scope="session")
def t4(f4):
    # one block of length 2 over F2
    return FieldTower(f4, [(2, 1)])


@pytest.fixture(scope="session")
def t9(f9):
    return FieldTower(f9, [(2, 1)])


@pytest.fixture(scope="session")
def t4_mixed(f4):
    # block of 2 over F2, then a singleton block over F4 itself
    return FieldTower(f4, [(2, 1), (1, 2)])


@pytest.fixture(scope="session")
def t4_hamming(f4):
    return FieldTower(f4, [(1, 2), (1, 2)])
