"""Disk cache for b_k coefficient series reduced mod m.

File format: 32-byte header packed as '<8sQQQ' (magic b"BKSERIES", then k, m,
precision as little-endian unsigned 64-bit), followed by one byte per
coefficient.  One byte suffices because the cache only stores modular series
with m < 256.  One file per (k, m) pair, named bk{k}_m{m}.bkseries, always
holding the longest expansion computed so far; a shorter request is served by
slicing the stored prefix.
"""

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

__all__ = ["DiskCache", "default_cache_dir", "MAGIC", "HEADER"]

MAGIC = b"BKSERIES"
HEADER = struct.Struct("<8sQQQ")


def default_cache_dir() -> Path:
    env = os.environ.get("REGULUS_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "regulus"


class DiskCache:
    """Longest-wins store of modular b_k series, one file per (k, m)."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def _path(self, k: int, m: int) -> Path:
        return self.directory / ("bk%d_m%d.bkseries" % (k, m))

    def load(self, k: int, m: int, precision: int):
        """Coefficient prefix of length `precision`, or None if not stored long enough."""
        path = self._path(k, m)
        try:
            with open(path, "rb") as fh:
                head = fh.read(HEADER.size)
        except OSError:
            return None
        if len(head) != HEADER.size:
            return None
        magic, k_file, m_file, p_file = HEADER.unpack(head)
        if magic != MAGIC or k_file != k or m_file != m or p_file < precision:
            return None
        data = np.fromfile(path, dtype=np.uint8, count=precision, offset=HEADER.size)
        if len(data) != precision:
            return None
        return data

    def store(self, k: int, m: int, coeffs) -> bool:
        """Write coeffs if longer than what is stored; atomic replace. True if written."""
        arr = np.ascontiguousarray(coeffs, dtype=np.uint8)
        path = self._path(k, m)
        existing = self._stored_precision(k, m)
        if existing is not None and existing >= len(arr):
            return False
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(HEADER.pack(MAGIC, k, m, len(arr)))
                arr.tofile(fh)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
        return True

    def _stored_precision(self, k: int, m: int):
        path = self._path(k, m)
        try:
            with open(path, "rb") as fh:
                head = fh.read(HEADER.size)
        except OSError:
            return None
        if len(head) != HEADER.size:
            return None
        magic, k_file, m_file, p_file = HEADER.unpack(head)
        if magic != MAGIC or k_file != k or m_file != m:
            return None
        return p_file
