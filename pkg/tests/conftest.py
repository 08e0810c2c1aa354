"""Shared fixtures and independent oracles.

The oracles deliberately avoid the code paths they check: polynomial products
are dict-based schoolbook loops (no numpy convolution), and partition counts
come from explicit generation of the partitions themselves rather than any
recurrence shared with the library.
"""

import numpy as np
import pytest

from regulus.cache import DiskCache


def poly_mul(a, b, precision, modulus=None):
    """Truncated product of coefficient lists via a plain double loop."""
    out = [0] * precision
    for i, x in enumerate(a):
        if i >= precision or x == 0:
            continue
        for j, y in enumerate(b):
            if i + j >= precision:
                break
            out[i + j] += x * y
    if modulus is not None:
        out = [v % modulus for v in out]
    return out


def gen_partitions(n, max_part=None):
    """Yield every partition of n as a non-increasing tuple."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in gen_partitions(n - first, first):
            yield (first,) + rest


def count_partitions_without_multiples(n, k):
    """Number of partitions of n with no part divisible by k, by generation."""
    return sum(1 for p in gen_partitions(n) if all(part % k for part in p))


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)


@pytest.fixture
def tmp_cache(tmp_path):
    return DiskCache(tmp_path / "cache")
