from fractions import Fraction

import numpy as np
import pytest

from regulus.etaforms import (
    EtaQuotient, Cusp, Classification, EtaConditionError, FormMeta,
    gordon_hughes_meta, character_eval, cusp_order, classify, complete_meta,
    sturm_bound,
)
from regulus.qseries import reduce_mod


def test_quotient_validation():
    with pytest.raises(ValueError):
        EtaQuotient(5, {2: 1})           # 2 does not divide 5
    with pytest.raises(ValueError):
        EtaQuotient(5, {1: 0})           # empty after dropping zeros
    with pytest.raises(ValueError):
        EtaQuotient(0, {1: 1})
    E = EtaQuotient(10, {1: 2, 2: 0, 5: -1})
    assert E.exponents == {1: 2, 5: -1}
    assert E.offset24 == -3


def test_cusp_validation():
    Cusp(0, 1)
    Cusp(1, 5)
    with pytest.raises(ValueError):
        Cusp(2, 4)                       # not in lowest terms
    with pytest.raises(ValueError):
        Cusp(1, 0)


def test_weight4_level5_form():
    E = EtaQuotient(5, {1: 4, 5: 4})
    meta = gordon_hughes_meta(E)
    assert meta.weight == 4
    assert meta.level == 5
    assert meta.character_descriptor == 1
    assert meta.character_pair == (625, 1)
    assert cusp_order(E, 1) == Fraction(1)
    assert cusp_order(E, 5) == Fraction(1)
    full = complete_meta(E)
    assert full.classification is Classification.CUSP_FORM
    assert full.is_cusp_form
    assert full.cusp_orders == {1: Fraction(1), 5: Fraction(1)}


def test_weight14_character_5():
    meta = gordon_hughes_meta(EtaQuotient(5, {5: 29, 1: -1}))
    assert meta.weight == 14
    assert meta.character_descriptor == 5


def test_condition_failures_name_the_gate():
    with pytest.raises(EtaConditionError) as err:
        gordon_hughes_meta(EtaQuotient(5, {1: 1, 5: 1}))
    assert err.value.condition == "sum_delta_r"
    with pytest.raises(EtaConditionError) as err:
        # sum delta*r = -8 + 8 = 0 but sum (N/delta)*r = -16 + 4 = -12
        gordon_hughes_meta(EtaQuotient(2, {1: -8, 2: 4}))
    assert err.value.condition == "sum_level_over_delta_r"
    with pytest.raises(EtaConditionError) as err:
        # both 24-divisibility sums vanish, but sum r = -5 is odd
        gordon_hughes_meta(EtaQuotient(12, {1: -4, 2: -4, 3: -2, 6: 3, 12: 2}))
    assert err.value.condition == "half_weight"


def test_character_values():
    assert character_eval(5, 2) == -1
    assert character_eval(5, 4) == 1
    assert character_eval(1, 7) == 1
    assert character_eval(5, 11) == 1
    # total multiplicativity in n
    for n in range(1, 30):
        for k in range(1, 30):
            assert character_eval(5, n * k) == character_eval(5, n) * character_eval(5, k)


def test_cusp_orders_of_regular_partition_quotient():
    E = EtaQuotient(5, {1: -1, 5: 1})
    assert cusp_order(E, 1) == Fraction(-1, 6)
    assert cusp_order(E, 5) == Fraction(1, 6)
    assert classify(E) is Classification.NOT_HOLOMORPHIC
    # numerator of the cusp never matters
    assert cusp_order(E, Cusp(1, 5)) == cusp_order(E, Cusp(2, 5)) == Fraction(1, 6)


def test_classify_skips_modularity_gate():
    # orders are defined for non-modular quotients; classify must not raise
    E = EtaQuotient(5, {1: 1, 5: 1})
    assert classify(E) is Classification.CUSP_FORM


def test_classify_level_180_form():
    E = EtaQuotient(180, {6: 4})
    meta = gordon_hughes_meta(E)
    assert meta.weight == 2
    assert classify(E) is Classification.CUSP_FORM


def test_leading_exponent_matches_cusp_order_at_infinity():
    # at d = N the cusp is infinity: order = (1/24) sum delta r = offset24/24
    rng = np.random.default_rng(5)
    for _ in range(20):
        exps = {1: int(rng.integers(-4, 5)), 2: int(rng.integers(-4, 5)),
                5: int(rng.integers(-4, 5)), 10: int(rng.integers(1, 5))}
        exps = {d: r for d, r in exps.items() if r}
        E = EtaQuotient(10, exps)
        assert cusp_order(E, 10) == Fraction(E.offset24, 24)


def test_cusp_order_doubles_with_exponents():
    rng = np.random.default_rng(9)
    for _ in range(10):
        exps = {1: int(rng.integers(-3, 4)), 5: int(rng.integers(1, 4))}
        exps = {d: r for d, r in exps.items() if r}
        E = EtaQuotient(5, exps)
        E2 = EtaQuotient(5, {d: 2 * r for d, r in exps.items()})
        for d in (1, 5):
            assert cusp_order(E2, d) == 2 * cusp_order(E, d)


def test_expand_agrees_with_eta_series():
    E = EtaQuotient(5, {1: 4, 5: 4})
    exact = E.expand(30)
    assert exact.offset24 == 24
    assert reduce_mod(exact, 7) == E.expand(30, 7)
    # leading coefficients of the weight-4 newform on Gamma_0(5)
    assert list(exact.coeffs[:8]) == [1, -4, 2, 8, -5, -8, 6, 0]


def test_sturm_bounds():
    assert sturm_bound(4, 5) == 2
    assert sturm_bound(12, 180) == 432
    assert sturm_bound(12, 1) == 1
    for m, want in ((7, 432), (11, 720), (13, 864)):
        assert sturm_bound(2 * m - 2, 180) == want
        assert want == 36 * (2 * m - 2)
    with pytest.raises(ValueError):
        sturm_bound(0, 5)


def test_sturm_bound_monotone_in_weight_and_level():
    for N in (1, 5, 180):
        bounds = [sturm_bound(k, N) for k in range(1, 16)]
        assert bounds == sorted(bounds)
    for k in (2, 4, 12):
        assert sturm_bound(k, 5) <= sturm_bound(k, 10) <= sturm_bound(k, 180)
