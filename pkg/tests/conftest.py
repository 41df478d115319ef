import pytest

from nhspectrum.field import make_context


@pytest.fixture(scope="session")
def f3():
    return make_context(3)


@pytest.fixture(scope="session")
def f5():
    return make_context(5)


@pytest.fixture(scope="session")
def f7():
    return make_context(7)
