import pytest

from qgfourier import cyclic_group, make_su2_quadrature, symmetric_group_s3


@pytest.fixture(scope="session")
def s3_table():
    return symmetric_group_s3()


@pytest.fixture(scope="session")
def z8_table():
    return cyclic_group(8)


@pytest.fixture(scope="session")
def su2_quad():
    return make_su2_quadrature()
