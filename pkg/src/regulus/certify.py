"""Sturm-certified congruence pipeline for 5-regular partitions.

A pair (m, l) of primes is certified by checking that the Hecke image
F_m | T(l) vanishes mod m on every coefficient up to the Sturm bound of
S_{2m-2}(Gamma_0(180), chi_5): finitely many zero coefficients then force the
whole image to vanish, which in turn yields the arithmetic progressions
b_5(A n + B) = 0 (mod m) recorded in the certificate.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .numth import is_prime, primes_up_to, gcd
from .qseries import eta_quotient_series
from .etaforms import sturm_bound
from .heckeops import hecke_T
from .regpart import bk_series, build_Fm, build_f_mz

__all__ = [
    "Progression",
    "CongruenceCertificate",
    "CriterionResult",
    "DEFAULT_SERIES_CAP",
    "EXTENDED_SERIES_CAP",
    "certify_pair",
    "derive_progressions",
    "criterion_scan",
    "scan_l",
    "verify_eta_factorization",
]

LEVEL = 180
CHARACTER = 5

DEFAULT_SERIES_CAP = 8 << 20     # bytes of b_5 table allowed without --extended
EXTENDED_SERIES_CAP = 48 << 20


@dataclass(frozen=True)
class Progression:
    """Asserts b_5(A n + B) = 0 (mod m) for every n >= 0."""

    A: int
    B: int
    m: int


@dataclass
class CongruenceCertificate:
    m: int
    l: int
    weight: int
    level: int
    character_descriptor: int
    sturm_bound: int
    coefficients_checked: int
    status: str                       # certified | failed | insufficient_precision
    first_nonzero: tuple | None       # (index, residue) of the first offender
    progressions: list
    timings: dict = field(default_factory=dict)
    required_precision: int | None = None   # set on insufficient_precision


@dataclass
class CriterionResult:
    """Smallest witness k with b_5(mk + (m^2-1)/6) nonzero mod m, if under the bound.

    The scan runs past 10(m-1) up to 12(m-1); a witness landing in that upper
    window contradicts neither claim cleanly, so it is reported in
    `discrepancy` as (k, e) with found=False rather than silently accepted.
    """

    m: int
    found: bool
    k: int | None
    e: int | None
    discrepancy: tuple | None = None


def _b5_table_length(m, l, bound):
    return (m * l * bound - 1) // 6 + 1


def certify_pair(m, l, *, extended=False, cache=None, cfg=None):
    """Certify F_m | T(l) = 0 (mod m) by scanning up to the Sturm bound.

    Builds F_m to precision l*bound + 1 so the Hecke image reaches index
    `bound`; l must be prime with l not dividing 30m.  The b_5 table length is
    gated (DEFAULT_SERIES_CAP bytes, EXTENDED_SERIES_CAP with extended=True);
    an over-cap request returns status insufficient_precision with the length
    it would have needed in required_precision.
    """
    if not is_prime(m) or m < 5:
        raise ValueError("m must be a prime >= 5")
    if not is_prime(l):
        raise ValueError("l must be prime")
    if (30 * m) % l == 0:
        raise ValueError("l = %d divides 30m = %d, outside the admissible range" % (l, 30 * m))
    weight = 2 * m - 2
    bound = sturm_bound(weight, LEVEL)
    cert = CongruenceCertificate(
        m=m, l=l, weight=weight, level=LEVEL, character_descriptor=CHARACTER,
        sturm_bound=bound, coefficients_checked=0, status="insufficient_precision",
        first_nonzero=None, progressions=[],
    )
    cap = EXTENDED_SERIES_CAP if extended else DEFAULT_SERIES_CAP
    needed = _b5_table_length(m, l, bound)
    if needed > cap:
        cert.required_precision = needed
        return cert

    t0 = time.perf_counter()
    F = build_Fm(m, l * bound + 1, cache, cfg)
    t1 = time.perf_counter()
    image = hecke_T(F, l, weight, CHARACTER)
    t2 = time.perf_counter()
    window = image.coeffs[: bound + 1]
    offenders = np.flatnonzero(window)
    t3 = time.perf_counter()
    cert.timings = {
        "build_Fm": round((t1 - t0) * 1000),
        "hecke": round((t2 - t1) * 1000),
        "scan": round((t3 - t2) * 1000),
    }
    cert.coefficients_checked = bound + 1
    if len(offenders):
        idx = int(offenders[0])
        cert.status = "failed"
        cert.first_nonzero = (idx, int(window[idx]))
    else:
        cert.status = "certified"
        cert.progressions = derive_progressions(m, l)
    return cert


def derive_progressions(m, l):
    """The l-1 gap-free progressions b_5(An+B) = 0 (mod m) behind a certified pair.

    A = m*l^2 and B runs over (m*l*(6c + n0) - 1)/6 for the residues c mod l
    except the single class t* where 6t + n0 = 0 (mod l); those indices have
    l | n in b_5((m*l*n - 1)/6) and are not covered by the certificate.
    """
    n0 = (m * l) % 6           # (m*l)^2 = 1 (mod 6), so this inverts m*l
    t_star = (-n0 * pow(6, -1, l)) % l
    A = m * l * l
    out = []
    for c in range(l):
        if c == t_star:
            continue
        out.append(Progression(A=A, B=(m * l * (6 * c + n0) - 1) // 6, m=m))
    out.sort(key=lambda p: p.B)
    return out


def criterion_scan(m, cache=None, cfg=None):
    """Search k with b_5(mk + (m^2-1)/6) nonzero mod m; found iff k < 10(m-1)."""
    if not is_prime(m) or m < 5:
        raise ValueError("m must be a prime >= 5")
    base = (m * m - 1) // 6
    hard = 10 * (m - 1)
    soft = 12 * (m - 1)
    table = bk_series(5, base + m * (soft - 1) + 1, m, cache, cfg)
    values = table.coeffs[base + m * np.arange(soft, dtype=np.int64)]
    witnesses = np.flatnonzero(values)
    if not len(witnesses):
        return CriterionResult(m=m, found=False, k=None, e=None)
    k = int(witnesses[0])
    e = int(values[k])
    if k < hard:
        return CriterionResult(m=m, found=True, k=k, e=e)
    return CriterionResult(m=m, found=False, k=None, e=None, discrepancy=(k, e))


def scan_l(m, l_max, *, pre_filter_bound=60, serre_only=False,
           extended=False, cache=None, cfg=None):
    """Certified pairs (l, certificate) over primes l <= l_max with l not dividing 30m.

    A cheap spot-check of b_5((m*l*n - 1)/6) mod m for n <= pre_filter_bound
    coprime to l weeds out nearly every candidate before the full Sturm run.
    serre_only restricts to l = -1 (mod 180m).
    """
    if not is_prime(m) or m < 5:
        raise ValueError("m must be a prime >= 5")
    candidates = [l for l in primes_up_to(l_max) if (30 * m) % l]
    if serre_only:
        period = 180 * m
        candidates = [l for l in candidates if l % period == period - 1]
    if not candidates:
        return []
    table = bk_series(
        5, (m * max(candidates) * pre_filter_bound - 1) // 6 + 1, m, cache, cfg)
    results = []
    for l in candidates:
        if not _pre_filter_ok(table, m, l, pre_filter_bound):
            continue
        cert = certify_pair(m, l, extended=extended, cache=cache, cfg=cfg)
        if cert.status == "certified":
            results.append((l, cert))
    results.sort(key=lambda pair: pair[0])
    return results


def _pre_filter_ok(table, m, l, bound):
    for n in range(1, bound + 1):
        if gcd(n, l) != 1:
            continue
        t = m * l * n - 1
        if t % 6:
            continue
        if table.coeffs[t // 6]:
            return False
    return True


def verify_eta_factorization(m, precision, cfg=None):
    """Check that the T(m)-image of eta^(am+1)(5z) eta^(bm-1)(z) is divisible
    by eta^4(5z) eta^4(z) as a truncated power series mod m.

    The image is expanded from precision m*precision, divided by the weight-4
    quotient, and the result must have nonnegative leading exponent once the
    q^(24/24) prefactor of the divisor is accounted for; a surviving pole
    (misaligned division) returns False.
    """
    if not is_prime(m) or m < 5:
        raise ValueError("m must be a prime >= 5")
    fac = build_f_mz(m)
    a, b = fac.a, fac.b
    H = eta_quotient_series({5: a * m + 1, 1: b * m - 1}, m * precision, m, cfg)
    image = hecke_T(H, m, 2 * m, CHARACTER)
    divisor = eta_quotient_series({1: 4, 5: 4}, image.precision, m, cfg)
    quotient = image.mul(divisor.inverse(cfg), cfg)
    # offset24 is now -24: quotient represents q^(-1) * sum Q[n] q^n, so the
    # series is holomorphic at q=0 iff Q[0] vanishes.  At m=5 the whole image
    # is 0 mod 5 and the zero series passes vacuously.
    if quotient.offset24 != -24:
        return False
    if quotient.coeffs[0] != 0:
        return False
    # round-trip: divisor * quotient must reproduce the image on the shared
    # prefix, or the offset/precision bookkeeping is misaligned
    back = divisor.mul(quotient, cfg)
    P = min(back.precision, image.precision)
    return bool(np.array_equal(back.coeffs[:P], image.coeffs[:P]))
