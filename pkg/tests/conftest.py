import pytest

from ncdomains.corpus import mixed_spec
from ncdomains.weights import hyperball_spec, weights_by_factorization


@pytest.fixture(scope="session")
def ball2_table():
    """q = Z_1 + Z_2, m = 2, depth 5."""
    return weights_by_factorization(hyperball_spec(2, 2), 5)


@pytest.fixture(scope="session")
def ball1_table():
    """q = Z_1 + Z_2, m = 1, depth 5."""
    return weights_by_factorization(hyperball_spec(2, 1), 5)


@pytest.fixture(scope="session")
def mixed_table():
    """q = Z_1 + Z_2 + Z_1 Z_2, m = 1, depth 5."""
    return weights_by_factorization(mixed_spec(1), 5)
