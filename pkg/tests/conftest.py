import pytest

import hermgrass as hg


@pytest.fixture(scope="session")
def ctx2():
    return hg.make_field(2, 1)


@pytest.fixture(scope="session")
def ctx3():
    return hg.make_field(3, 1)


@pytest.fixture(scope="session")
def space42(ctx2):
    return hg.HermitianSpace(4, ctx2)


@pytest.fixture(scope="session")
def space52(ctx2):
    return hg.HermitianSpace(5, ctx2)


@pytest.fixture(scope="session")
def space62(ctx2):
    return hg.HermitianSpace(6, ctx2)


@pytest.fixture(scope="session")
def space72(ctx2):
    return hg.HermitianSpace(7, ctx2)


@pytest.fixture(scope="session")
def space82(ctx2):
    return hg.HermitianSpace(8, ctx2)


@pytest.fixture(scope="session")
def space43(ctx3):
    return hg.HermitianSpace(4, ctx3)


@pytest.fixture(scope="session")
def space53(ctx3):
    return hg.HermitianSpace(5, ctx3)


@pytest.fixture(scope="session")
def system42(space42):
    return hg.build_system(space42)


@pytest.fixture(scope="session")
def system52(space52):
    return hg.build_system(space52)


@pytest.fixture(scope="session")
def system62(space62):
    return hg.build_system(space62)


@pytest.fixture(scope="session")
def system43(space43):
    return hg.build_system(space43)


@pytest.fixture(scope="session")
def system53(space53):
    return hg.build_system(space53)
