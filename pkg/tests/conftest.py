from __future__ import annotations

import pytest

from cyclocolour.splitting import GeneratorCache


@pytest.fixture(scope="session")
def gen_cache(request) -> GeneratorCache:
    """Generator cache shared by the whole run, persisted under the pytest cache dir."""
    root = request.config.cache.mkdir("cyclocolour")
    return GeneratorCache(root / "generators.json")
