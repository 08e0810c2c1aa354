"""
The 5-regular partition congruence b_5(5n+4) = 0 (mod 5)
========================================================

b_5(n) counts partitions of n with no part divisible by 5.  Its
generating function is the eta quotient (q^5;q^5)_inf / (q;q)_inf.
"""

from regulus import bk_series, b5_value_oracle, check_progression

# First values: 1, 1, 2, 3, 5, 6, ...
b5 = bk_series(5, 30)
print("b_5(n) for n < 16:", list(b5.coeffs[:16]))

# Cross-check a single value against direct enumeration.
print("b_5(12) =", int(b5.coeffs[12]), "oracle:", b5_value_oracle(12))

# Reduce mod 5 and read off the arithmetic progression 5n+4.
b5_mod5 = bk_series(5, 20000, 5)
print("b_5 mod 5, n < 10:", b5_mod5.coeffs[:10].tolist())
print("b_5(5n+4) mod 5, n < 14:", b5_mod5.coeffs[4::5][:14].tolist())

# check_progression automates this scan for any (A, B, m).
report = check_progression(5, 4, 5, 10**5)
print("b_5(5n+4) = 0 mod 5 for n <= 10^5:", report.all_zero)

# A progression that fails reports its first violation instead.
bad = check_progression(5, 3, 5, 100)
print("b_5(5n+3) mod 5 first violation at n =", bad.first_violation)
