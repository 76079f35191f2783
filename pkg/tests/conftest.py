import pytest

from orbitpoly.catalog import CATALOG_NAMES, build_group

# Group -> does the semigroup property hold (equivalently: is it generated
# by reflections).  Rotation-only cyclic groups are the negative controls.
SP_EXPECTED = {
    "c3": False,
    "c4": False,
    "a2": True,
    "b2": True,
    "g2": True,
    "i2_5": True,
    "a3": True,
    "b3": True,
}

EXPECTED_ORDER = {
    "c3": 3,
    "c4": 4,
    "a2": 6,
    "b2": 8,
    "g2": 12,
    "i2_5": 10,
    "a3": 24,
    "b3": 48,
}

COXETER_NAMES = tuple(n for n in CATALOG_NAMES if SP_EXPECTED[n])


@pytest.fixture(scope="session")
def groups():
    return {name: build_group(name) for name in CATALOG_NAMES}
