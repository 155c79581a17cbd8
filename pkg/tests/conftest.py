import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from catfrac.fixtures import load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def fx():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name)
        return cache[name]
    return get


