"""Operators on q-expansions: U(j), V(j), and the Hecke operator T(l).

All three act on the integral q-expansion, so series carrying a fractional
q^(offset24/24) prefactor must have offset24 divisible by 24; the prefactor
is folded into the coefficients first (known leading zeros, no precision
overclaim).  Output precision is ceil(P/j): the last usable coefficient
a(j * floor((P-1)/j)) is always included, which is what Sturm-bound scans
need when the input was sized as P = l*bound + 1.
"""

import numpy as np

from .numth import is_prime
from .qseries import QSeries, _coeff_dtype, _freeze, eta_quotient_series
from .etaforms import character_eval

__all__ = ["U", "V", "hecke_T", "verify_frobenius_reduction"]


def _integral_coeffs(f):
    g = f.to_integral()
    return g.coeffs


def U(f: QSeries, j: int) -> QSeries:
    """Coefficient extraction a(n) -> a(jn); output precision ceil(P/j)."""
    if j < 1:
        raise ValueError("U needs j >= 1")
    a = _integral_coeffs(f)
    return QSeries(a[::j], f.modulus, 0)


def V(f: QSeries, j: int) -> QSeries:
    """Exponent dilation q -> q^j; offset24 scales by j; output precision j*P."""
    if j < 1:
        raise ValueError("V needs j >= 1")
    P = f.precision
    out = np.zeros(j * P, dtype=f.coeffs.dtype)
    out[::j] = f.coeffs
    return QSeries(_freeze(out), f.modulus, f.offset24 * j)


def hecke_T(f: QSeries, l: int, k: int, D: int) -> QSeries:
    """Weight-k Hecke action a(n) -> a(ln) + (D|l) * l^(k-1) * a(n/l), prime l.

    The a(n/l) term is 0 when l does not divide n.  With a modulus m present
    the twist factor (D|l) * l^(k-1) is reduced mod m once per call.
    """
    if not is_prime(l):
        raise ValueError("Hecke index %d is not prime" % l)
    if k < 1:
        raise ValueError("weight must be >= 1")
    a = _integral_coeffs(f)
    out_len = (len(a) - 1) // l + 1
    m = f.modulus
    n_div = (out_len - 1) // l + 1
    if m is None:
        factor = character_eval(D, l) * l ** (k - 1)
        out = np.array([int(v) for v in a[::l][:out_len]], dtype=np.object_)
        if factor:
            out[::l] = out[::l] + factor * a[:n_div]
    else:
        factor = character_eval(D, l) % m * pow(l, k - 1, m) % m
        out = a[::l][:out_len].astype(np.int64)
        if factor:
            out[::l] += factor * a[:n_div].astype(np.int64)
        out = (out % m).astype(_coeff_dtype(m))
    return QSeries(_freeze(out), m, 0)


def _frobenius_reduce(exponents, m):
    """Replace every factor eta(delta z)^r with m | delta by eta((delta/m) z)^(r*m).

    Valid coefficientwise mod m because prod(1 - q^(delta n)) is congruent to
    prod(1 - q^((delta/m) n))^m, and the q^(delta/24) prefactors match.
    """
    out = dict(exponents)
    while any(d % m == 0 for d in out):
        d = next(d for d in out if d % m == 0)
        r = out.pop(d)
        out[d // m] = out.get(d // m, 0) + r * m
    return {d: r for d, r in out.items() if r}


def verify_frobenius_reduction(E_num, m: int, P: int, cfg=None) -> bool:
    """Expand an eta product and its mod-m Frobenius reduction; compare to precision P.

    E_num is an EtaQuotient or a plain exponent map.  Returns True iff both
    expansions carry the same offset and agree coefficientwise mod m.
    """
    exponents = getattr(E_num, "exponents", E_num)
    reduced = _frobenius_reduce(exponents, m)
    lhs = eta_quotient_series(exponents, P, m, cfg)
    rhs = eta_quotient_series(reduced, P, m, cfg)
    if lhs.offset24 != rhs.offset24:
        return False
    return bool(np.array_equal(lhs.coeffs, rhs.coeffs))
