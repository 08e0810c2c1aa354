"""
Truncated q-series arithmetic
=============================

A quick tour of the QSeries ring: construction, multiplication,
inversion, and the Euler products everything else is built from.
"""

import numpy as np

from regulus import QSeries, euler_product, eta_quotient_series

# A series is a coefficient vector plus an optional prime modulus.
# 1 + 2q + 3q^2 truncated to O(q^3):
f = QSeries([1, 2, 3])
print("f      =", f.coeffs)

# Multiplication truncates to the shorter precision.
g = QSeries([1, -1, 0, 4])
print("f*g    =", f.mul(g).coeffs)

# Units (nonzero constant term) invert; the product is 1 + O(q^P).
h = QSeries([1, 1, 1, 1, 1, 1])
inv = h.inverse()
print("h*h^-1 =", h.mul(inv).coeffs)

# Euler product (q^d; q^d)_inf expanded by pentagonal numbers, so the
# cost is O(P sqrt(P)) additions rather than a full product over n.
E = euler_product(12)
print("(q;q)  =", E.coeffs)

# The partition generating function is its inverse.
p = E.inverse()
print("p(n)   =", p.coeffs)

# Working mod a prime keeps coefficients in a single byte when m < 256.
p5 = euler_product(12, 5).inverse()
print("p mod 5 =", p5.coeffs, p5.coeffs.dtype)

# Ramanujan: p(5n+4) = 0 mod 5.
p5_long = euler_product(200, 5).inverse()
print("p(5n+4) mod 5:", p5_long.coeffs[4::5][:12])

# Eta quotients carry a fractional prefactor q^(offset24/24).
# eta(z) itself is q^(1/24) (q;q)_inf:
eta = eta_quotient_series({1: 1}, 10)
print("eta: offset24 =", eta.offset24, "coeffs =", eta.coeffs)

# Frobenius mod m: f(q)^m = f(q^m) for any series with coefficients
# in the prime field.
fm = eta_quotient_series({1: 1, 5: 1}, 60, 7)
lhs = fm.pow(7)
rhs = np.zeros(60, dtype=lhs.coeffs.dtype)
rhs[::7] = fm.coeffs[: (60 - 1) // 7 + 1]
print("Frobenius check:", bool(np.array_equal(lhs.coeffs, rhs)))
