import pytest
from moebiusql.arith.cache import CACHE_DIR_ENV
from moebiusql.arith.sieve import SieveTable, sieve

TABLE_SIZE = 10**6 + 64


@pytest.fixture(scope="session")
def table() -> SieveTable:
    "mu and omega up to a million, shared by every test"
    return sieve(TABLE_SIZE, segment_size=2**18, with_omega=True)


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch) -> str:
    "keeps sieve caches out of the system temp directory"
    directory = tmp_path / "cache"
    monkeypatch.setenv(CACHE_DIR_ENV, str(directory))
    return str(directory)
