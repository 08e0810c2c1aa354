"""k-regular partition series, a brute-force value oracle, progression scans,
and assembly of the series F_m whose coefficients are b_5((mn-1)/6) mod m.

A k-regular partition allows no part divisible by k, so the generating
function is prod (1-q^{kn})/(1-q^n): a sparse pentagonal numerator times the
inverse of a sparse pentagonal denominator.  Everything downstream (Hecke
certification, progression scans) reuses the same b_5 coefficient table, so
modular tables with m < 256 are cached on disk.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numth import is_prime
from .qseries import QSeries, euler_product, _freeze
from .etaforms import EtaQuotient
from .heckeops import U

__all__ = [
    "ProgressionReport",
    "PrecisionCapError",
    "EtaFactorization",
    "bk_series",
    "b5_value_oracle",
    "check_progression",
    "build_Fm",
    "build_f_mz",
    "fm_via_eta_chain",
]


@dataclass(frozen=True)
class ProgressionReport:
    """Outcome of scanning b_5(A*n + B) mod m for n = 0..n_checked-1."""

    A: int
    B: int
    m: int
    n_checked: int
    first_violation: int | None
    all_zero: bool


class PrecisionCapError(ValueError):
    """A scan would need a series longer than the configured memory cap."""

    def __init__(self, required, cap):
        super().__init__(
            "needs %d coefficients, over the %d-byte series cap" % (required, cap))
        self.required = required
        self.cap = cap


def bk_series(k, precision, modulus=None, cache=None, cfg=None):
    """Generating series of k-regular partitions: prod (1-q^{kn})/(1-q^n).

    Coefficient n is b_k(n), reduced mod `modulus` when given.  offset24 is 0:
    this is the pure combinatorial series, no eta prefactor.  Modular tables
    with modulus < 256 are read from / written to `cache` when one is passed.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    cacheable = cache is not None and modulus is not None and modulus < 256
    if cacheable:
        hit = cache.load(k, modulus, precision)
        if hit is not None:
            return QSeries(_freeze(hit), modulus, 0)
    # invert first so the two large euler products are never both live
    inv = euler_product(precision, modulus, 1).inverse(cfg)
    series = euler_product(precision, modulus, k).mul(inv, cfg)
    if cacheable:
        cache.store(k, modulus, series.coeffs)
    return series


@lru_cache(maxsize=None)
def _partition_count_no_mult5(n, kmax):
    if n == 0:
        return 1
    if kmax == 0:
        return 0
    if kmax % 5 == 0:
        return _partition_count_no_mult5(n, kmax - 1)
    total = _partition_count_no_mult5(n, kmax - 1)
    if kmax <= n:
        total += _partition_count_no_mult5(n - kmax, kmax)
    return total


def b5_value_oracle(n: int) -> int:
    """b_5(n) by direct enumeration over largest allowed part.

    Independent of the series machinery; exponential-ish in sqrt(n), intended
    for n up to roughly 80.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return _partition_count_no_mult5(n, n)


def check_progression(A, B, m, n_max, cache=None, memory_cap=1 << 28, cfg=None):
    """Scan b_5(A*n + B) mod m for n = 0..n_max; report first violation if any.

    Builds the b_5 table once to precision A*n_max + B + 1 (one byte per
    coefficient); memory_cap bounds that length.
    """
    if A < 1 or B < 0 or n_max < 0:
        raise ValueError("need A >= 1, B >= 0, n_max >= 0")
    precision = A * n_max + B + 1
    if memory_cap is not None and precision > memory_cap:
        raise PrecisionCapError(precision, memory_cap)
    series = bk_series(5, precision, m, cache, cfg)
    scan = series.coeffs[B::A][: n_max + 1]
    nonzero = np.flatnonzero(scan)
    first = int(nonzero[0]) if len(nonzero) else None
    return ProgressionReport(
        A=A, B=B, m=m,
        n_checked=n_max + 1,
        first_violation=first,
        all_zero=first is None,
    )


def build_Fm(m, precision, cache=None, cfg=None):
    """Series mod m with coefficient b_5((mn-1)/6) at n when 6 | mn-1, else 0.

    Support sits on n = m (mod 6).  Built by strided gather from the b_5
    table; the eta-operator chain that proves this is the right object is
    checked separately (fm_via_eta_chain).
    """
    if not is_prime(m) or m < 5:
        raise ValueError("m must be a prime >= 5")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    m_res = m % 6
    F = np.zeros(precision, dtype=np.uint8 if m < 256 else np.int64)
    idx_dtype = np.int32 if m * precision < (1 << 31) else np.int64
    ns = np.arange(m_res, precision, 6, dtype=idx_dtype)
    if len(ns):
        b5_needed = int((m * int(ns[-1]) - 1) // 6) + 1
        b5 = bk_series(5, b5_needed, m, cache, cfg)
        F[ns] = b5.coeffs[(m * ns - 1) // 6]
    return QSeries(_freeze(F), m, 0)


@dataclass(frozen=True)
class EtaFactorization:
    """The eta quotient eta(5z)/eta(z) * eta^a(5mz) * eta^b(mz) for a prime m.

    m_prime = m mod 6 lies in {1, 5}; a = 5 - m_prime and b = m_prime - 1, so
    exactly one of a, b is 4 and the other 0.  offset24 = m(5a+b) + 4 is
    divisible by 24, so the expansion folds to an integral q-series.
    """

    m: int
    m_prime: int
    a: int
    b: int
    quotient: EtaQuotient

    @property
    def offset24(self):
        return self.quotient.offset24

    def expand(self, precision, modulus=None, cfg=None):
        return self.quotient.expand(precision, modulus, cfg)


def build_f_mz(m: int) -> EtaFactorization:
    """Eta factorization whose U(m) image carries the b_5((mn-1)/6) series."""
    if not is_prime(m) or m < 5:
        raise ValueError("m must be a prime >= 5")
    m_prime = m % 6
    a = 5 - m_prime
    b = m_prime - 1
    exponents = {1: -1, 5: 1}
    for delta, r in ((5 * m, a), (m, b)):
        if r:
            exponents[delta] = exponents.get(delta, 0) + r
    quotient = EtaQuotient(30 * m, exponents)
    assert quotient.offset24 == m * (5 * a + b) + 4
    return EtaFactorization(m=m, m_prime=m_prime, a=a, b=b, quotient=quotient)


def fm_via_eta_chain(m, precision, cfg=None):
    """build_Fm recomputed through the operator chain, for cross-validation.

    Chain: expand the eta factorization, apply U(m), strip the dilated Euler
    factors via the U-twist identity (dividing by prod (1-q^{5n})^a (1-q^n)^b),
    then renormalize exponents q -> q^6 against the prefactor shift.  Equals
    build_Fm(m, precision) coefficientwise mod m.
    """
    fac = build_f_mz(m)
    w = fac.offset24 // 24
    c = (6 * w - 1) // m
    assert c * m == 6 * w - 1 and c in (1, 5)
    # Y[t] = b_5(m*t - w) lands at output index 6t - c; need 6t - c < precision
    T = (precision - 1 + c) // 6 + 1
    expand_len = max(m * (T - 1) + 1 - w, 1)
    f_int = fac.expand(expand_len, m, cfg)
    Y = U(f_int, m)
    D = euler_product(T, m, 5).pow(fac.a, cfg).mul(
        euler_product(T, m, 1).pow(fac.b, cfg), cfg)
    Y = Y.truncate(T).mul(D.inverse(cfg), cfg)
    out = np.zeros(precision, dtype=Y.coeffs.dtype)
    for t in range(1, T):
        n = 6 * t - c
        if 0 <= n < precision:
            out[n] = Y.coeffs[t]
    return QSeries(_freeze(out), m, 0)
