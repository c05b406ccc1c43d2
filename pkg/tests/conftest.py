import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from maxminpoly import census as census_mod


@pytest.fixture(scope="session")
def census_cache():
    """Memoized census runs shared across test modules."""
    cache = {}

    def get(b: int, n: int, space: str = census_mod.ALL_VECTORS):
        key = (b, n, space)
        if key not in cache:
            cache[key] = census_mod.census(b, n, space)
        return cache[key]

    return get
