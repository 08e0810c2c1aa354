"""Truncated q-series arithmetic.

A QSeries holds the first P coefficients of a power series in q, either over
the integers (exact mode) or over Z/m for a prime m (modular mode).  The
offset24 field tracks a global prefactor q^(offset24/24), so eta quotients
with fractional leading exponents stay first-class: the stored object means

    q^(offset24/24) * sum_{n < P} coeffs[n] * q^n.

Operations never claim more output precision than is derivable from their
inputs.  Multiplication picks one of three strategies: slice-add convolution
against the sparser operand, numpy schoolbook convolution for short series,
and Kronecker substitution (coefficients packed into one big integer each,
multiplied via gmpy2, unpacked mod m) for long dense series, blocked
column-by-column to bound working memory.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt

import gmpy2
import numpy as np

from .numth import is_prime

__all__ = [
    "QSeries",
    "SeriesConfig",
    "DEFAULT_CONFIG",
    "ModulusMismatchError",
    "OffsetAlignmentError",
    "NonInvertibleError",
    "mul",
    "inverse",
    "power",
    "reduce_mod",
    "euler_product",
    "eta_quotient_series",
]


class ModulusMismatchError(ValueError):
    """Operands live over different coefficient rings."""


class OffsetAlignmentError(ValueError):
    """Operands carry different q^(offset24/24) prefactors where equal ones are required."""


class NonInvertibleError(ValueError):
    """Constant term is not a unit in the coefficient ring."""


@dataclass
class SeriesConfig:
    """Tunable thresholds for the convolution engine."""

    sparse_slack: float = 2.0        # sparse path when nnz <= sparse_slack * sqrt(2P)
    schoolbook_cutoff: int = 1024    # np.convolve below this output precision
    kron_block: int = 1 << 20        # coefficients per block in column mode
    kron_single_budget: int = 16 << 20  # max packed bytes for a one-shot big multiply
    sparse_block: int = 1 << 21      # output block length for the slice-add path
    threads: int = 1                 # worker threads for the slice-add path


DEFAULT_CONFIG = SeriesConfig()


def _cfg(cfg):
    return DEFAULT_CONFIG if cfg is None else cfg


def _coeff_dtype(modulus):
    if modulus is None:
        return np.object_
    return np.uint8 if modulus < 256 else np.int64


def _normalize(coeffs, modulus):
    dtype = _coeff_dtype(modulus)
    if modulus is None:
        arr = np.array([int(c) for c in coeffs], dtype=np.object_)
    else:
        arr = np.asarray(coeffs)
        if arr.dtype == np.object_:
            arr = np.array([int(c) % modulus for c in coeffs], dtype=dtype)
        else:
            arr = (arr.astype(np.int64) % modulus).astype(dtype)
    arr.setflags(write=False)
    return arr


# ---------------------------------------------------------------------------
# convolution engine (raw arrays, polynomial semantics, truncation explicit)

def _nnz(arr):
    if arr.dtype == np.object_:
        return sum(1 for c in arr if c != 0)
    return int(np.count_nonzero(arr))


def _sparse_terms(arr):
    """(index, value) pairs of the nonzero entries, as Python ints."""
    if arr.dtype == np.object_:
        return [(i, int(v)) for i, v in enumerate(arr) if v != 0]
    idx = np.flatnonzero(arr)
    return [(int(i), int(arr[i])) for i in idx]


def _conv_sparse(kernel, g, P, modulus, cfg, lo=0):
    """out[n] = sum kernel[j] * g[n-j] for lo <= n < P, kernel as (index, value) pairs.

    Returns the P - lo coefficients of that window; lo=0 is the plain product.
    """
    cfg = _cfg(cfg)
    if modulus is None:
        out = np.zeros(P - lo, dtype=np.object_)
        for j, v in kernel:
            if j >= P:
                break
            start = max(lo, j)
            hi = min(P, j + len(g))
            if hi <= start:
                continue
            if v == 1:
                out[start - lo : hi - lo] += g[start - j : hi - j]
            elif v == -1:
                out[start - lo : hi - lo] -= g[start - j : hi - j]
            else:
                out[start - lo : hi - lo] += v * g[start - j : hi - j]
        return out

    m = modulus
    nnz = len(kernel)
    # delayed reduction is safe while nnz * (m-1)^2 stays inside the accumulator
    if m < 256 and nnz * (m - 1) * (m - 1) < (1 << 31):
        acc_dtype, delayed = np.int32, True
    else:
        acc_dtype, delayed = np.int64, nnz * (m - 1) * (m - 1) < (1 << 62)
    out = np.empty(P - lo, dtype=_coeff_dtype(m))
    block = cfg.sparse_block

    def run_block(s):
        e = min(s + block, P)
        acc = np.zeros(e - s, dtype=acc_dtype)
        for j, v in kernel:
            if j >= e:
                break
            start = max(s, j)
            hi = min(e, j + len(g))
            if hi <= start:
                continue
            seg = g[start - j : hi - j]
            tgt = acc[start - s : hi - s]
            if v == 1:
                tgt += seg
            elif v == m - 1:
                tgt -= seg
            else:
                tgt += v * seg.astype(acc_dtype)
            if not delayed:
                np.mod(acc, m, out=acc)
        out[s - lo : e - lo] = acc % m

    starts = range(lo, P, block)
    if cfg.threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            list(ex.map(run_block, starts))
    else:
        for s in starts:
            run_block(s)
    return out


def _kron_pack(arr, bper, payload):
    buf = np.zeros((len(arr), bper), dtype=np.uint8)
    if payload == 1:
        buf[:, 0] = arr          # single-byte coefficients: no widening pass
    else:
        v = np.ascontiguousarray(arr, dtype=np.uint64)
        for k in range(payload):
            buf[:, k] = (v >> np.uint64(8 * k)).astype(np.uint8)
    return gmpy2.mpz.from_bytes(buf.tobytes(), byteorder="little")


def _kron_unpack_mod(z, count, bper, m):
    raw = z.to_bytes(count * bper, byteorder="little")
    a = np.frombuffer(raw, dtype=np.uint8).reshape(count, bper)
    # per-step values stay below 256*m, so int32 holds them whenever m < 256
    acc_dtype = np.int32 if m < 256 else np.int64
    acc = np.zeros(count, dtype=acc_dtype)
    tmp = np.empty(count, dtype=acc_dtype)
    mult = 1
    for k in range(bper):
        if mult == 0:
            break
        np.multiply(a[:, k], acc_dtype(mult), out=tmp)
        acc += tmp
        np.mod(acc, m, out=acc)
        mult = (mult * 256) % m
    return acc


def _kron_params(pair_len, m):
    bound = pair_len * (m - 1) * (m - 1)
    bper = (bound.bit_length() + 7) // 8
    payload = ((m - 1).bit_length() + 7) // 8
    return bper, payload


def _conv_kron(a, b, P, m, cfg):
    """Truncated convolution mod m through gmpy2 big-integer multiplication."""
    cfg = _cfg(cfg)
    la, lb = len(a), len(b)
    bper, payload = _kron_params(min(la, lb), m)
    if (la + lb) * bper * 2 <= cfg.kron_single_budget:
        z = _kron_pack(a, bper, payload) * _kron_pack(b, bper, payload)
        full = la + lb - 1
        conv = _kron_unpack_mod(z, full, bper, m)
        out = np.zeros(P, dtype=_coeff_dtype(m))
        out[: min(P, full)] = conv[: min(P, full)]
        return out

    L = cfg.kron_block
    bper, payload = _kron_params(L, m)
    ncols = (P + L - 1) // L
    ka = (la + L - 1) // L
    kb = (lb + L - 1) // L
    out = np.empty(P, dtype=_coeff_dtype(m))
    # column sums add at most ka values already reduced below m
    col_dtype = np.int32 if m * (ka + 1) < (1 << 31) else np.int64
    carry = np.zeros(L, dtype=col_dtype)
    for t in range(ncols):
        col = np.zeros(2 * L, dtype=col_dtype)
        col[:L] += carry
        for i in range(max(0, t - kb + 1), min(t, ka - 1) + 1):
            j = t - i
            ai = a[i * L : min((i + 1) * L, la)]
            bj = b[j * L : min((j + 1) * L, lb)]
            z = _kron_pack(ai, bper, payload) * _kron_pack(bj, bper, payload)
            n = len(ai) + len(bj) - 1
            col[:n] += _kron_unpack_mod(z, n, bper, m)
        lo = t * L
        hi = min(lo + L, P)
        out[lo:hi] = col[: hi - lo] % m
        carry = col[L:].copy()
    return out


def _conv_trunc(a, b, P, modulus, cfg=None, force=None):
    """First P coefficients of the polynomial product a*b (reduced mod modulus if set).

    force picks a strategy by name ("sparse", "schoolbook", "kron") for cross-checks.
    """
    cfg = _cfg(cfg)
    if P < 1:
        raise ValueError("precision must be >= 1")
    if modulus is None:
        na, nb = _nnz(a), _nnz(b)
        kernel, g = (a, b) if na <= nb else (b, a)
        return _conv_sparse(_sparse_terms(kernel), g, P, None, cfg)

    m = modulus
    na, nb = _nnz(a), _nnz(b)
    strategy = force
    if strategy is None:
        if min(na, nb) <= cfg.sparse_slack * isqrt(2 * P):
            strategy = "sparse"
        elif P <= cfg.schoolbook_cutoff and min(len(a), len(b)) * (m - 1) * (m - 1) < (1 << 62):
            strategy = "schoolbook"
        else:
            strategy = "kron"
    if strategy == "sparse":
        kernel, g = (a, b) if na <= nb else (b, a)
        return _conv_sparse(_sparse_terms(kernel), g, P, m, cfg)
    if strategy == "schoolbook":
        conv = np.convolve(a.astype(np.int64), b.astype(np.int64))[:P] % m
        out = np.zeros(P, dtype=np.int64)
        out[: len(conv)] = conv
        return out.astype(_coeff_dtype(m))
    if strategy == "kron":
        return _conv_kron(a, b, P, m, cfg)
    raise ValueError("unknown strategy %r" % strategy)


def _conv_tail(a, b, lo, P, m, cfg):
    """Coefficients lo..P-1 of the truncated product a*b mod m.

    Windows the sparse path so only P - lo coefficients are materialized;
    other strategies compute the full prefix and slice.
    """
    cfg = _cfg(cfg)
    na, nb = _nnz(a), _nnz(b)
    if min(na, nb) <= cfg.sparse_slack * isqrt(2 * P):
        kernel, g = (a, b) if na <= nb else (b, a)
        return _conv_sparse(_sparse_terms(kernel), g, P, m, cfg, lo=lo)
    full = _conv_trunc(a, b, P, m, cfg)
    return full[lo:].copy()


def _inv_exact(fc, P):
    c0 = int(fc[0])
    if c0 not in (1, -1):
        raise NonInvertibleError("exact inversion needs constant term +-1, got %d" % c0)
    terms = [(j, int(v)) for j, v in _sparse_terms(fc) if 0 < j < P]
    g = [0] * P
    g[0] = c0
    for n in range(1, P):
        s = 0
        for j, v in terms:
            if j > n:
                break
            s += v * g[n - j]
        g[n] = -c0 * s
    return np.array(g, dtype=np.object_)


def _inv_modular(fc, m, cfg):
    P = len(fc)
    c0 = int(fc[0])
    if c0 % m == 0:
        raise NonInvertibleError("constant term is 0 mod %d" % m)
    # quadratic base case, then Newton doubling g <- g - g*(f*g - 1)
    n = min(P, 64)
    head = [int(v) for v in fc[:n]]
    g = [0] * n
    g[0] = pow(c0, -1, m)
    for i in range(1, n):
        s = 0
        for j in range(1, i + 1):
            if head[j]:
                s += head[j] * g[i - j]
        g[i] = -g[0] * s % m
    g = np.array(g, dtype=_coeff_dtype(m))
    while n < P:
        n2 = min(2 * n, P)
        # only the new window of f*g matters; the prefix is 1 by induction
        e = _conv_tail(fc[:n2], g, n, n2, m, cfg)
        if e.any():
            delta = _conv_trunc(g, e, n2 - n, m, cfg)
            del e
            tail = ((m - delta) % m).astype(g.dtype, copy=False)
            del delta
        else:
            tail = np.zeros(n2 - n, dtype=g.dtype)
        g = np.concatenate([g, tail])
        n = n2
    return g


# ---------------------------------------------------------------------------

class QSeries:
    """Truncated power series q^(offset24/24) * sum coeffs[n] q^n."""

    def __init__(self, coeffs, modulus=None, offset24=0):
        if modulus is not None:
            if modulus >= (1 << 31):
                raise ValueError("modulus must be < 2^31")
            if not is_prime(modulus):
                raise ValueError("modulus must be prime, got %d" % modulus)
        if len(coeffs) < 1:
            raise ValueError("precision must be >= 1")
        self.modulus = modulus
        self.offset24 = int(offset24)
        self.coeffs = coeffs if _ready(coeffs, modulus) else _normalize(coeffs, modulus)

    @property
    def precision(self):
        return len(self.coeffs)

    @classmethod
    def one(cls, precision, modulus=None):
        c = np.zeros(precision, dtype=_coeff_dtype(modulus))
        c[0] = 1
        return cls(_freeze(c), modulus)

    # -- ring operations ----------------------------------------------------

    def mul(self, other, cfg=None):
        """Product, truncated to min(precisions); offsets add."""
        self._check_modulus(other)
        P = min(self.precision, other.precision)
        c = _conv_trunc(self.coeffs[:P], other.coeffs[:P], P, self.modulus, cfg)
        return QSeries(_freeze(c), self.modulus, self.offset24 + other.offset24)

    def add(self, other):
        self._check_modulus(other)
        self._check_offset(other)
        P = min(self.precision, other.precision)
        if self.modulus is None:
            c = self.coeffs[:P] + other.coeffs[:P]
        else:
            c = self.coeffs[:P].astype(np.int64) + other.coeffs[:P]
            c = (c % self.modulus).astype(_coeff_dtype(self.modulus))
        return QSeries(_freeze(c), self.modulus, self.offset24)

    def sub(self, other):
        self._check_modulus(other)
        self._check_offset(other)
        P = min(self.precision, other.precision)
        if self.modulus is None:
            c = self.coeffs[:P] - other.coeffs[:P]
        else:
            c = self.coeffs[:P].astype(np.int64) - other.coeffs[:P]
            c = (c % self.modulus).astype(_coeff_dtype(self.modulus))
        return QSeries(_freeze(c), self.modulus, self.offset24)

    def inverse(self, cfg=None):
        """Multiplicative inverse; requires a unit constant term. Offset negates."""
        if self.modulus is None:
            c = _inv_exact(self.coeffs, self.precision)
        else:
            c = _inv_modular(self.coeffs, self.modulus, cfg)
        return QSeries(_freeze(c), self.modulus, -self.offset24)

    def pow(self, e, cfg=None):
        """Integer power by binary exponentiation; pow(f, 0) is 1 at the same precision."""
        if e == 0:
            return QSeries.one(self.precision, self.modulus)
        base = self if e > 0 else self.inverse(cfg)
        e = abs(e)
        acc = None
        while e:
            if e & 1:
                acc = base if acc is None else acc.mul(base, cfg)
            e >>= 1
            if e:
                base = base.mul(base, cfg)
        return acc

    # -- structural helpers --------------------------------------------------

    def truncate(self, precision):
        if precision > self.precision:
            raise ValueError("cannot extend precision %d to %d" % (self.precision, precision))
        return QSeries(self.coeffs[:precision], self.modulus, self.offset24)

    def to_integral(self):
        """Fold a q^(offset24/24) prefactor into the coefficient array.

        Requires offset24 to be a nonnegative multiple of 24; the known leading
        zeros are prepended, so the gained precision is derivable, not claimed.
        """
        if self.offset24 % 24:
            raise OffsetAlignmentError(
                "offset24 %d is not a multiple of 24" % self.offset24)
        w = self.offset24 // 24
        if w < 0:
            raise OffsetAlignmentError("negative integral offset %d unsupported" % w)
        if w == 0:
            return self
        pad = np.zeros(w, dtype=self.coeffs.dtype)
        return QSeries(_freeze(np.concatenate([pad, self.coeffs])), self.modulus, 0)

    def coefficient(self, n):
        if not 0 <= n < self.precision:
            raise IndexError("coefficient %d beyond precision %d" % (n, self.precision))
        return int(self.coeffs[n])

    def nonzero_count(self):
        return _nnz(self.coeffs)

    def agrees_with(self, other, terms=None):
        """Coefficientwise equality over the shared prefix (same modulus and offset)."""
        self._check_modulus(other)
        self._check_offset(other)
        P = min(self.precision, other.precision)
        if terms is not None:
            P = min(P, terms)
        return bool(np.array_equal(self.coeffs[:P], other.coeffs[:P]))

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check_modulus(other)
        self._check_offset(other)
        return self.precision == other.precision and bool(
            np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __mul__(self, other):
        return self.mul(other)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __pow__(self, e):
        return self.pow(e)

    def __repr__(self):
        ring = "ZZ" if self.modulus is None else "Z/%d" % self.modulus
        return "<QSeries %s precision %d offset24 %d>" % (ring, self.precision, self.offset24)

    def _check_modulus(self, other):
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                "moduli differ: %r vs %r" % (self.modulus, other.modulus))

    def _check_offset(self, other):
        if self.offset24 != other.offset24:
            raise OffsetAlignmentError(
                "offset24 differ: %d vs %d (align explicitly first)"
                % (self.offset24, other.offset24))


def _ready(coeffs, modulus):
    return (
        isinstance(coeffs, np.ndarray)
        and coeffs.dtype == _coeff_dtype(modulus)
        and not coeffs.flags.writeable
    )


def _freeze(arr):
    arr.setflags(write=False)
    return arr


# ---------------------------------------------------------------------------
# free-function forms of the ring operations

def mul(f, g, cfg=None):
    return f.mul(g, cfg)


def inverse(f, cfg=None):
    return f.inverse(cfg)


def power(f, e, cfg=None):
    return f.pow(e, cfg)


def reduce_mod(f, m):
    """Map an exact series into Z/m coefficientwise (offset kept)."""
    if f.modulus == m:
        return f
    if f.modulus is not None:
        raise ModulusMismatchError("series already reduced mod %d" % f.modulus)
    return QSeries(_normalize(f.coeffs, m), m, f.offset24)


# ---------------------------------------------------------------------------
# Euler products and eta quotients

def pentagonal_exponents(limit, dilation=1):
    """(exponent, sign) pairs of prod (1 - q^(dilation*n)) below limit.

    Exponents are dilation * k(3k-1)/2 over k = 0, 1, -1, 2, -2, ...; the sign
    of the q^(dilation*k(3k-1)/2) term is (-1)^k.
    """
    out = [(0, 1)]
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        hit = False
        for kk in (k, -k):
            e = dilation * (kk * (3 * kk - 1) // 2)
            if e < limit:
                out.append((e, sign))
                hit = True
        if not hit:
            break
        k += 1
    out.sort()
    return out


def euler_product(precision, modulus=None, dilation=1):
    """prod_{n>=1} (1 - q^(dilation*n)) truncated; about 2*sqrt(2P/3)/dilation terms."""
    c = np.zeros(precision, dtype=_coeff_dtype(modulus))
    for e, s in pentagonal_exponents(precision, dilation):
        c[e] = s if (modulus is None or s == 1) else modulus - 1
    return QSeries(_freeze(c), modulus)


def eta_quotient_series(exponents, precision, modulus=None, cfg=None):
    """Expansion of prod_delta eta(delta z)^r_delta as a QSeries.

    exponents maps delta -> r_delta (nonzero).  The result carries
    offset24 = sum delta * r_delta; factors with r = +-1 stay sparse, general
    exponents go through binary powering, and all negative powers are divided
    out with a single inversion.
    """
    if not exponents:
        raise ValueError("empty eta quotient")
    num = None
    den = None
    for delta in sorted(exponents):
        r = exponents[delta]
        if r == 0:
            continue
        if delta < 1:
            raise ValueError("dilation must be >= 1, got %d" % delta)
        base = euler_product(precision, modulus, delta)
        f = base if abs(r) == 1 else base.pow(abs(r), cfg)
        if r > 0:
            num = f if num is None else num.mul(f, cfg)
        else:
            den = f if den is None else den.mul(f, cfg)
    if num is None and den is None:
        raise ValueError("eta quotient has no nonzero exponents")
    if den is None:
        series = num
    else:
        inv = den.inverse(cfg)
        series = inv if num is None else num.mul(inv, cfg)
    nu = sum(d * r for d, r in exponents.items())
    return QSeries(series.coeffs, modulus, nu)
