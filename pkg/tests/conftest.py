import numpy as np
import pytest

from charmimic import set_cache_dir


@pytest.fixture(scope="session", autouse=True)
def isolated_prime_cache(tmp_path_factory):
    # keep test runs from touching the real per-user cache
    set_cache_dir(tmp_path_factory.mktemp("prime-cache"))
    yield
    set_cache_dir(None)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260822)
