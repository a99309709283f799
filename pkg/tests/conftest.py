import pytest

from monoidbench.sampling import lattice_monoid_pool, table_monoid_pool


@pytest.fixture(scope="session")
def table_pool():
    return table_monoid_pool(seed=7, count=50, max_size=7)


@pytest.fixture(scope="session")
def small_table_pool():
    return [A for A in table_monoid_pool(seed=11, count=60, max_size=6) if A.size <= 6]


@pytest.fixture(scope="session")
def lattice_pool():
    return lattice_monoid_pool(seed=13, count=20, max_a=3, max_b=2)
