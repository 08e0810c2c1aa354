"""
Eta quotients as modular forms
==============================

Weight, character, cusp orders, and holomorphy classification for eta
quotients, checked against a classical example: eta(z)^4 eta(5z)^4 is
the unique newform of weight 4 on Gamma_0(5).
"""

from regulus import (
    EtaQuotient, gordon_hughes_meta, classify, cusp_order, sturm_bound,
    Classification,
)

E = EtaQuotient(5, {1: 4, 5: 4})
meta = gordon_hughes_meta(E)
print("weight   =", meta.weight)
print("character:", meta.character_pair)          # trivial: square discriminant

# Orders at the cusps 1/d for d | N. Both are 1 here, so the form
# vanishes at every cusp: a cusp form.
for d in (1, 5):
    print("ord at 1/%d = %s" % (d, cusp_order(E, d)))
print("class    =", classify(E).name)

# The q-expansion starts at q^(offset24/24) = q^1 and matches the
# newform 5.4.a.a: 1, -4, 2, 8, -5, ...
print("expansion:", E.expand(8).coeffs)

# A Sturm bound caps how many coefficients identify a form uniquely.
print("sturm(4, 5)   =", sturm_bound(4, 5))
print("sturm(12, 180) =", sturm_bound(12, 180))

# classify() also reports non-holomorphic quotients: a negative order
# at some cusp means a pole there.
F = EtaQuotient(5, {1: -1, 5: 1})
print("eta(5z)/eta(z) on level 5:", classify(F).name)
for d in (1, 5):
    print("  ord at 1/%d = %s" % (d, cusp_order(F, d)))
