import logging
import os
import struct
import tempfile
from typing import Optional
import numpy as np
from moebiusql.arith.sieve import SieveTable, sieve
from moebiusql.utils.errors import CacheFormatError

logger = logging.getLogger(__name__)

TEMPDIR_PATH = tempfile.gettempdir()
CACHE_DIR_NAME = "moebiusql_sieve_cache"
CACHE_DIR_PATH = os.path.join(TEMPDIR_PATH, CACHE_DIR_NAME)
CACHE_DIR_ENV = "MOEBIUSQL_CACHE_DIR"

MAGIC = b"MUSV0001"
HEADER = struct.Struct("<8sQB")
"magic, n_max, flags"

FLAG_OMEGA = 0x01


class SieveCache:
    """On-disk sieve tables.

    Layout: `MUSV0001`, n_max as 8-byte little-endian unsigned, one flag byte
    (bit 0: omega block present), packed 2-bit mu codes, then the optional
    omega block with one byte per entry.
    """

    @staticmethod
    def get_cache_dir(cache_dir: Optional[str] = None) -> str:
        return cache_dir or os.environ.get(CACHE_DIR_ENV) or CACHE_DIR_PATH

    @staticmethod
    def get_file_name(n_max: int, cache_dir: Optional[str] = None) -> str:
        return os.path.join(SieveCache.get_cache_dir(cache_dir), f"mu_{n_max}.musv")

    @staticmethod
    def get_cache_exists(n_max: int, cache_dir: Optional[str] = None, with_omega: bool = False) -> bool:
        file_name = SieveCache.get_file_name(n_max, cache_dir)
        if not os.path.isfile(file_name):
            return False
        if not with_omega:
            return True
        with open(file_name, "rb") as file:
            header = file.read(HEADER.size)
        return len(header) == HEADER.size and bool(HEADER.unpack(header)[2] & FLAG_OMEGA)

    @staticmethod
    def export_table(table: SieveTable, file_path: str):
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        flags = FLAG_OMEGA if table.omega is not None else 0
        partial_path = f"{file_path}.partial"
        with open(partial_path, "wb") as file:
            file.write(HEADER.pack(MAGIC, table.n_max, flags))
            file.write(table.packed_mu.tobytes())
            if table.omega is not None:
                file.write(table.omega.tobytes())
        os.replace(partial_path, file_path)
        logger.info("wrote sieve cache %s (n_max=%d)", file_path, table.n_max)

    @staticmethod
    def import_table(file_path: str) -> SieveTable:
        with open(file_path, "rb") as file:
            data = file.read()
        if len(data) < HEADER.size:
            raise CacheFormatError(f"{file_path} is shorter than the cache header")
        magic, n_max, flags = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise CacheFormatError(f"{file_path} has magic {magic!r}, expected {MAGIC!r}")
        if n_max < 1:
            raise CacheFormatError(f"{file_path} declares n_max={n_max}")

        mu_bytes = (n_max + 3) // 4
        omega_bytes = n_max if flags & FLAG_OMEGA else 0
        expected = HEADER.size + mu_bytes + omega_bytes
        if len(data) != expected:
            raise CacheFormatError(f"{file_path} holds {len(data)} bytes, expected {expected}")

        packed = np.frombuffer(data, dtype=np.uint8, count=mu_bytes, offset=HEADER.size).copy()
        omega = None
        if omega_bytes:
            omega = np.frombuffer(data, dtype=np.uint8, count=omega_bytes, offset=HEADER.size + mu_bytes).copy()
        logger.info("loaded sieve cache %s (n_max=%d)", file_path, n_max)
        return SieveTable(int(n_max), packed, omega)

    @staticmethod
    def clear_cache(cache_dir: Optional[str] = None):
        directory = SieveCache.get_cache_dir(cache_dir)
        if os.path.isdir(directory):
            for file in os.listdir(directory):
                if file.endswith(".musv"):
                    os.remove(os.path.join(directory, file))


def load_or_sieve(
    n_max: int,
    cache_dir: Optional[str] = None,
    use_cache: bool = True,
    with_omega: bool = False,
    **sieve_kwargs,
) -> SieveTable:
    "returns the cached table for n_max when present, otherwise sieves and caches it"
    file_name = SieveCache.get_file_name(n_max, cache_dir)
    if use_cache and SieveCache.get_cache_exists(n_max, cache_dir, with_omega):
        return SieveCache.import_table(file_name)
    table = sieve(n_max, with_omega=with_omega, **sieve_kwargs)
    if use_cache:
        SieveCache.export_table(table, file_name)
    return table
