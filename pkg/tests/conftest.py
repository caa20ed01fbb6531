"""Shared fixtures: one build per family, reused across the whole session.

Radii are chosen so that every test's trusted region is large enough for
its certification margins (distance certificates need W-values that only
grow with the build radius).  Building these is the dominant fixture cost,
hence session scope; all library functions treat complexes as immutable.
"""

import pytest

from curvcx.generators import (
    bipartite_squares,
    book,
    product_of_trees,
    regular_tessellation,
    spherical_solid,
)


@pytest.fixture(scope="session")
def hyp73():
    return regular_tessellation(7, 3, radius=6)


@pytest.fixture(scope="session")
def quint45():
    return regular_tessellation(4, 5, radius=6)


@pytest.fixture(scope="session")
def flat44():
    return regular_tessellation(4, 4, radius=6)


@pytest.fixture(scope="session")
def tri36():
    return regular_tessellation(3, 6, radius=6)


@pytest.fixture(scope="session")
def hex63():
    return regular_tessellation(6, 3, radius=5)


@pytest.fixture(scope="session")
def pent54():
    return regular_tessellation(5, 4, radius=5)


@pytest.fixture(scope="session")
def prod33():
    return product_of_trees(3, 3, radius=5)


@pytest.fixture(scope="session")
def prod44():
    return product_of_trees(4, 4, radius=5)


@pytest.fixture(scope="session")
def book2():
    return book(2, radius=6)


@pytest.fixture(scope="session")
def book3():
    return book(3, radius=6)


@pytest.fixture(scope="session")
def sig4():
    return bipartite_squares(4, radius=6)


@pytest.fixture(scope="session")
def cube():
    return spherical_solid("cube")
