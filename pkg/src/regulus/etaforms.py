"""Eta-quotient metadata: modularity conditions, character, cusp orders, Sturm bounds.

An eta quotient prod_{delta|N} eta(delta z)^{r_delta} defines a weight-k form
on Gamma_0(N) with a quadratic Nebentypus character when three congruence
conditions hold (Gordon-Hughes).  Holomorphy and cuspidality are read off the
vanishing orders at the cusps of Gamma_0(N), computed by Martin's exact
rational formula, which depends only on the denominator d | N of the cusp.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from .numth import prime_factors, kronecker
from .qseries import eta_quotient_series

__all__ = [
    "EtaQuotient",
    "FormMeta",
    "Cusp",
    "Classification",
    "EtaConditionError",
    "gordon_hughes_meta",
    "character_eval",
    "cusp_order",
    "classify",
    "complete_meta",
    "sturm_bound",
]


class EtaConditionError(ValueError):
    """One of the three modularity conditions fails; .condition names it."""

    def __init__(self, condition, message):
        super().__init__(message)
        self.condition = condition


class Classification(enum.Enum):
    CUSP_FORM = "cusp_form"
    HOLOMORPHIC_FORM = "holomorphic_form"
    NOT_HOLOMORPHIC = "not_holomorphic"


@dataclass(frozen=True)
class EtaQuotient:
    """prod eta(delta z)^{r_delta} with every delta dividing the level."""

    level: int
    exponents: dict

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be >= 1")
        cleaned = {int(d): int(r) for d, r in self.exponents.items() if r != 0}
        if not cleaned:
            raise ValueError("exponent map must be nonempty")
        for d in cleaned:
            if d < 1 or self.level % d:
                raise ValueError("dilation %d does not divide level %d" % (d, self.level))
        object.__setattr__(self, "exponents", cleaned)

    @property
    def offset24(self):
        return sum(d * r for d, r in self.exponents.items())

    def expand(self, precision, modulus=None, cfg=None):
        return eta_quotient_series(self.exponents, precision, modulus, cfg)


@dataclass(frozen=True)
class Cusp:
    """Cusp c/d of Gamma_0(N); the order formula uses only d."""

    c: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("cusp denominator must be >= 1")
        if gcd(self.c, self.d) != 1:
            raise ValueError("cusp %d/%d is not in lowest terms" % (self.c, self.d))


@dataclass
class FormMeta:
    weight: int
    level: int
    character_descriptor: int          # signed squarefree D; character value is (D|n)
    character_pair: tuple              # (-1)^k * prod delta^{r_delta} as reduced (num, den)
    is_cusp_form: bool | None = None   # filled by classify/complete_meta
    cusp_orders: dict | None = None    # divisor d -> Fraction, filled by complete_meta
    classification: Classification | None = None


def gordon_hughes_meta(E: EtaQuotient) -> FormMeta:
    """Check the three modularity conditions and compute weight and character.

    Conditions: sum delta*r_delta = 0 (mod 24), sum (N/delta)*r_delta = 0
    (mod 24), and sum r_delta even.  The character is n -> (D|n) where D is
    the signed squarefree kernel of (-1)^k prod delta^{r_delta}.
    """
    N = E.level
    s1 = sum(d * r for d, r in E.exponents.items())
    if s1 % 24:
        raise EtaConditionError(
            "sum_delta_r", "sum delta*r_delta = %d, not 0 mod 24" % s1)
    s2 = sum((N // d) * r for d, r in E.exponents.items())
    if s2 % 24:
        raise EtaConditionError(
            "sum_level_over_delta_r", "sum (N/delta)*r_delta = %d, not 0 mod 24" % s2)
    rsum = sum(E.exponents.values())
    if rsum % 2:
        raise EtaConditionError(
            "half_weight", "sum r_delta = %d is odd, weight not integral" % rsum)
    k = rsum // 2

    sign = -1 if k % 2 else 1
    frac = Fraction(sign)
    parity: dict[int, int] = {}
    for d, r in E.exponents.items():
        frac *= Fraction(d) ** r
        for p, e in prime_factors(d).items():
            parity[p] = (parity.get(p, 0) + e * r) % 2
    D = sign
    for p, odd in sorted(parity.items()):
        if odd:
            D *= p
    return FormMeta(
        weight=k,
        level=N,
        character_descriptor=D,
        character_pair=(frac.numerator, frac.denominator),
    )


def character_eval(D: int, n: int) -> int:
    """Value of the character with descriptor D at n: the Kronecker symbol (D|n)."""
    return kronecker(D, n)


def cusp_order(E: EtaQuotient, cusp) -> Fraction:
    """Vanishing order of the eta quotient at a cusp with denominator d | N.

    Martin's formula: (N/24) sum_delta r_delta * gcd(d^2, delta^2)
    / (delta * gcd(d^2, N)); exact rational, independent of the numerator c.
    """
    d = cusp.d if isinstance(cusp, Cusp) else int(cusp)
    N = E.level
    if d < 1 or N % d:
        raise ValueError("cusp denominator %d does not divide level %d" % (d, N))
    total = Fraction(0)
    d2 = d * d
    for delta, r in E.exponents.items():
        total += Fraction(r * gcd(d2, delta * delta), delta * gcd(d2, N))
    return Fraction(N, 24) * total


def _divisors(N):
    out = [1]
    for p, e in prime_factors(N).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def classify(E: EtaQuotient) -> Classification:
    """cusp_form / holomorphic_form / not_holomorphic from the cusp orders.

    Evaluates one cusp per divisor of N.  Deliberately does not re-run the
    modularity conditions; gordon_hughes_meta is their single checker, and
    orders are well defined (and useful) even for non-modular quotients.
    """
    orders = [cusp_order(E, d) for d in _divisors(E.level)]
    if all(o > 0 for o in orders):
        return Classification.CUSP_FORM
    if all(o >= 0 for o in orders):
        return Classification.HOLOMORPHIC_FORM
    return Classification.NOT_HOLOMORPHIC


def complete_meta(E: EtaQuotient) -> FormMeta:
    """FormMeta with cusp orders (one per divisor d | N) and classification filled."""
    meta = gordon_hughes_meta(E)
    meta.cusp_orders = {d: cusp_order(E, d) for d in _divisors(E.level)}
    if all(o > 0 for o in meta.cusp_orders.values()):
        meta.classification = Classification.CUSP_FORM
    elif all(o >= 0 for o in meta.cusp_orders.values()):
        meta.classification = Classification.HOLOMORPHIC_FORM
    else:
        meta.classification = Classification.NOT_HOLOMORPHIC
    meta.is_cusp_form = meta.classification is Classification.CUSP_FORM
    return meta


def sturm_bound(k: int, N: int) -> int:
    """floor((k*N/12) * prod_{p|N} (1 + 1/p)), in exact rational arithmetic."""
    if k < 1 or N < 1:
        raise ValueError("need weight >= 1 and level >= 1")
    b = Fraction(k * N, 12)
    for p in prime_factors(N):
        b *= Fraction(p + 1, p)
    return floor(b)
