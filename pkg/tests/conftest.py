import pytest

from zariski_no import fixtures


@pytest.fixture(scope="session")
def cusp_ws():
    return fixtures.cusp()


@pytest.fixture(scope="session")
def cusp_far_ws():
    return fixtures.cusp_far()


@pytest.fixture(scope="session")
def plane_ws():
    return fixtures.plane()


@pytest.fixture(scope="session")
def blown_ws():
    return fixtures.blown_plane()


@pytest.fixture(scope="session")
def all_workspaces():
    return {name: build() for name, build in fixtures.ALL.items()}
