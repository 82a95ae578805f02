import pytest

from hdxcheck import complete_complex, rp2_six, torus_seven


@pytest.fixture(scope="session")
def delta42():
    return complete_complex(4, 2)


@pytest.fixture(scope="session")
def delta62():
    return complete_complex(6, 2)


@pytest.fixture(scope="session")
def delta63():
    return complete_complex(6, 3)


@pytest.fixture(scope="session")
def rp2():
    return rp2_six()


@pytest.fixture(scope="session")
def torus():
    return torus_seven()
