import pytest

from jokerlab.cohom import resolution
from jokerlab.ffield import F4
from jokerlab.groups import make_q8


@pytest.fixture(scope="session")
def q8():
    return make_q8()


@pytest.fixture(scope="session")
def res(q8):
    return resolution(F4, q8, 9)
