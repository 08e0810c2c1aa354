"""
Certifying b_5(2023 n + 99) = 0 (mod 7)
=======================================

The certification pipeline: fold b_5 into a level-180 cusp form mod m,
apply a Hecke operator T(l), and check the image vanishes up to the
Sturm bound.  A finite computation then proves infinitely many
congruences at once.
"""

from regulus import (
    build_Fm, hecke_T, sturm_bound, certify_pair, check_progression,
)

m, l = 7, 17

# F_m collects b_5((m n - 1)/6) mod m on the support n = m mod 6 (6).
F = build_Fm(m, 40)
print("F_7 mod 7, first coefficients:", F.coeffs[:14].tolist())

# It behaves like a form of weight 2m-2 on Gamma_0(180); the Sturm
# bound for that space is 36(2m-2).
B = sturm_bound(2 * m - 2, 180)
print("sturm bound:", B)

# If T(l) F = 0 mod m up to the bound, it is 0 identically.
F_full = build_Fm(m, l * B + 1)
image = hecke_T(F_full, l, 2 * m - 2, 5)
print("T(17) F_7 mod 7 vanishes to the bound:",
      not image.coeffs[: B + 1].any())

# certify_pair packages the computation and derives the progressions.
cert = certify_pair(m, l)
print("status:", cert.status)
print("progressions:", len(cert.progressions))
print("first:", cert.progressions[0])

# Every derived progression is an actual congruence; spot-check one
# empirically well past the certified prefix.
p = cert.progressions[0]
r = check_progression(p.A, p.B, m, 400)
print("b_5(%d n + %d) = 0 mod %d for n <= 400: %s"
      % (p.A, p.B, m, r.all_zero))

# Not every prime l works: l = 11 leaves a nonzero coefficient, and
# the certificate records the witness.
failed = certify_pair(7, 11)
print("certify(7, 11):", failed.status, "witness:", failed.first_nonzero)
