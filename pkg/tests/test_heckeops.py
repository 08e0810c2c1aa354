import numpy as np
import pytest

from regulus.qseries import (
    QSeries, OffsetAlignmentError, eta_quotient_series, reduce_mod,
)
from regulus.heckeops import U, V, hecke_T, verify_frobenius_reduction, _frobenius_reduce
from regulus.numth import kronecker


def series(values, m=None, offset24=0):
    dtype = np.object_ if m is None else np.int64
    return QSeries(np.array(values, dtype=dtype), m, offset24)


def test_U_examples():
    f = series([1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1])     # 1 + q^5 + q^10, P=11
    g = U(f, 5)
    assert g.precision == 3
    assert list(g.coeffs) == [1, 1, 1]
    # P=15 gives the same three coefficients: index 15..19 would be needed for a 4th
    f2 = series([1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0])
    assert U(f2, 5).precision == 3
    assert U(f, 1) == f


def test_V_examples():
    f = series([3, 1, 4], m=7)
    g = V(f, 3)
    assert g.precision == 9
    assert list(g.coeffs) == [3, 0, 0, 1, 0, 0, 4, 0, 0]
    assert V(f, 1) == f
    assert V(series([1], offset24=24), 2).offset24 == 48


def test_U_folds_offset():
    f = series([5, 6], m=7, offset24=48)   # q^2 * (5 + 6q)
    g = U(f, 2)
    assert g.offset24 == 0
    assert list(g.coeffs) == [0, 5]        # integral part 0,0,5,6: indices 0,2
    with pytest.raises(OffsetAlignmentError):
        U(series([1], offset24=4), 2)


def test_operator_validation():
    f = series([1, 2, 3], m=7)
    with pytest.raises(ValueError):
        U(f, 0)
    with pytest.raises(ValueError):
        V(f, 0)
    with pytest.raises(ValueError):
        hecke_T(f, 4, 2, 5)    # composite index
    with pytest.raises(ValueError):
        hecke_T(f, 3, 0, 5)    # weight below 1


def test_UV_round_trip(rng):
    for _ in range(30):
        m = int(rng.choice([5, 7, 13]))
        P = int(rng.integers(1, 80))
        j = int(rng.integers(1, 9))
        f = QSeries(rng.integers(0, m, size=P), m)
        assert U(V(f, j), j) == f


def test_U_twist_identity(rng):
    # U_j(f * V_j(g)) = U_j(f) * g
    for _ in range(30):
        m = int(rng.choice([5, 7, 13]))
        j = int(rng.integers(2, 7))
        f = QSeries(rng.integers(0, m, size=int(rng.integers(2, 90))), m)
        g = QSeries(rng.integers(0, m, size=int(rng.integers(1, 40))), m)
        lhs = U(f.mul(V(g, j)), j)
        rhs = U(f, j).mul(g)
        P = min(lhs.precision, rhs.precision)
        assert lhs.truncate(P) == rhs.truncate(P)


def test_hecke_small_example_by_hand():
    m, l, k, D = 11, 3, 2, 5
    c = [0, 3, 5, 0, 0, 0, 2, 0, 0, 1, 0, 0]
    f = series(c, m=m)
    t = hecke_T(f, l, k, D)
    chi = kronecker(D, l)
    want = []
    for n in range(4):
        v = c[l * n] if l * n < len(c) else 0
        if n % l == 0:
            v += chi * l ** (k - 1) * c[n // l]
        want.append(v % m)
    assert [int(x) for x in t.coeffs] == want


def test_hecke_exact_matches_modular(rng):
    for _ in range(10):
        P = int(rng.integers(4, 50))
        l = int(rng.choice([2, 3, 5, 7]))
        k = int(rng.integers(1, 6))
        vals = [int(v) for v in rng.integers(-30, 30, size=P)]
        exact = hecke_T(series(vals), l, k, 5)
        for m in (7, 13):
            assert reduce_mod(exact, m) == hecke_T(series(vals, m=m), l, k, 5)


def test_hecke_at_l_equal_m_is_U(rng):
    # chi(m) * m^(k-1) = 0 mod m once k >= 2, so T(m) degenerates to U(m)
    for _ in range(20):
        m = int(rng.choice([5, 7, 11]))
        k = int(rng.integers(2, 8))
        f = QSeries(rng.integers(0, m, size=int(rng.integers(2, 120))), m)
        assert hecke_T(f, m, k, 5) == U(f, m)


def test_hecke_operators_commute(rng):
    for _ in range(20):
        m = int(rng.choice([7, 11]))
        l1, l2 = 2, int(rng.choice([3, 7, 13]))
        k = int(rng.integers(2, 7))
        f = QSeries(rng.integers(0, m, size=int(rng.integers(l1 * l2, 200))), m)
        a = hecke_T(hecke_T(f, l1, k, 5), l2, k, 5)
        b = hecke_T(hecke_T(f, l2, k, 5), l1, k, 5)
        assert a == b


def test_hecke_linearity(rng):
    m = 13
    for _ in range(10):
        P = int(rng.integers(6, 100))
        f = QSeries(rng.integers(0, m, size=P), m)
        g = QSeries(rng.integers(0, m, size=P), m)
        assert hecke_T(f.add(g), 3, 4, 5) == hecke_T(f, 3, 4, 5).add(hecke_T(g, 3, 4, 5))


def test_frobenius_reduce_bookkeeping():
    assert _frobenius_reduce({1: -1, 5: 1, 35: 4}, 7) == {1: -1, 5: 29}
    assert _frobenius_reduce({1: -1, 5: 5}, 5) == {1: 24}
    assert _frobenius_reduce({49: 2}, 7) == {1: 98}     # two reduction rounds
    assert _frobenius_reduce({1: 3, 2: 1}, 7) == {1: 3, 2: 1}


def test_verify_frobenius_reduction():
    assert verify_frobenius_reduction({1: -1, 5: 5}, 5, 300)
    assert verify_frobenius_reduction({1: -1, 5: 1, 35: 4}, 7, 300)
    assert verify_frobenius_reduction({1: -1, 5: 1, 11: 4}, 11, 200)
    # EtaQuotient input works too
    from regulus.etaforms import EtaQuotient
    assert verify_frobenius_reduction(EtaQuotient(35, {1: -1, 5: 1, 35: 4}), 7, 150)
