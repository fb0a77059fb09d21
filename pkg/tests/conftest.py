import pytest

from goglattice import enumeration


@pytest.fixture(scope="session")
def universe():
    """Cached exhaustive triangle lists, shared across test modules."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = list(enumeration.enumerate_triangles(n))
        return cache[n]

    return get


@pytest.fixture(scope="session")
def censuses():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = enumeration.build_census(n)
        return cache[n]

    return get
