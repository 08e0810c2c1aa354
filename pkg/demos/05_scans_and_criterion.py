"""
Scanning for certifiable primes and nonvanishing witnesses
==========================================================

Two searches: which Hecke primes l certify congruences for a given m,
and whether F_m itself is provably nonzero mod m (so the machinery has
something to certify).
"""

from regulus import scan_l, criterion_scan, derive_progressions

# All l <= 60 that certify a congruence family for m = 7.
results = scan_l(7, 60)
for l, cert in results:
    print("m=7, l=%d: %s" % (l, cert.status))

# serre_only restricts to l = -1 (mod 180m), the classes where the
# Hecke image vanishes for density reasons; for m = 7 the first such
# prime is 1259, far beyond this window.
print("serre_only below 60:", scan_l(7, 60, serre_only=True))

# The nonvanishing criterion scans F_m near (m^2 - 1)/6 for a nonzero
# coefficient mod m.  A witness in the window proves F_m != 0.
for m in (5, 7, 11, 13):
    r = criterion_scan(m)
    if r.found:
        print("m=%d: witness at k=%d, residue %d" % (m, r.k, r.e))
    else:
        print("m=%d: no witness (F_m = 0 mod m: every b_5 value"
              " in the progression is divisible)" % m)

# Progressions come straight from the index algebra, no search needed.
for A, B, m in [(p.A, p.B, p.m) for p in derive_progressions(7, 17)[:3]]:
    print("b_5(%d n + %d) = 0 (mod %d)" % (A, B, m))
