from __future__ import annotations

import pytest

from commuting_powers.catalog.enumeration import enumerate_order
from commuting_powers.catalog.specs import catalog_groups, make
from commuting_powers.core.settings import get_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def s3():
    # ids: 0=e, 1=(01), 2=(012), 3=(12), 4=(02), 5=(021)
    return make("S3")


@pytest.fixture(scope="session")
def c6():
    return make("C6")


@pytest.fixture(scope="session")
def c12():
    return make("C12")


@pytest.fixture(scope="session")
def catalog_24():
    return catalog_groups(24)


@pytest.fixture(scope="session")
def catalog_48():
    return catalog_groups(48)


@pytest.fixture(scope="session")
def enumerated_12():
    return [G for n in range(1, 13) for G in enumerate_order(n)]
