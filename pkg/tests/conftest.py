import pytest

from circperm.circulant import parse_spec
from circperm.pipeline import derive


@pytest.fixture(scope="session")
def derived():
    """Session-wide cache of full derivations, keyed by (jumps, size, weights)."""
    cache = {}

    def get(jumps, size=None, weights=None):
        key = (jumps, size, weights)
        if key not in cache:
            cache[key] = derive(parse_spec(jumps, size, weights))
        return cache[key]

    return get
