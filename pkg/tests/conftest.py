import pytest

from todatopo import cartan_matrix, generate_weyl_group


@pytest.fixture(scope="session")
def W_A1():
    return generate_weyl_group(cartan_matrix("A", 1))


@pytest.fixture(scope="session")
def W_A2():
    return generate_weyl_group(cartan_matrix("A", 2))


@pytest.fixture(scope="session")
def W_A3():
    return generate_weyl_group(cartan_matrix("A", 3))


@pytest.fixture(scope="session")
def W_A4():
    return generate_weyl_group(cartan_matrix("A", 4))


@pytest.fixture(scope="session")
def W_B2():
    return generate_weyl_group(cartan_matrix("B", 2))


@pytest.fixture(scope="session")
def W_B3():
    return generate_weyl_group(cartan_matrix("B", 3))


@pytest.fixture(scope="session")
def W_G2():
    return generate_weyl_group(cartan_matrix("G", 2))


@pytest.fixture(scope="session")
def W_D4():
    return generate_weyl_group(cartan_matrix("D", 4))
