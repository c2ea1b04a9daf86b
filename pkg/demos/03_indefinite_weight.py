"""
A weight that changes sign
==========================

When P is not monotone, the weight is indefinite and there are eigenvalues
of both signs.  Negative ones are brackets for the reflected set (beta -> -beta)
with the signs flipped.
"""
from fractions import Fraction

from selfsim_sl import INDEFINITE, LEBESGUE, bracket_eigenvalue, moments, negative_eigenvalues, recheck, reflect

s = INDEFINITE
mom = moments(s)
print("a =", s.a, " d =", s.d, " beta =", s.beta)
print("moments:", mom)

for n in (1, 2):
    pos = bracket_eigenvalue(s, mom, n, Fraction(1, 10), 10_000)
    neg = negative_eigenvalues(s, mom, n, Fraction(1, 10), 10_000)
    print(f"nu+_{n} in [{float(pos.lo):.4f}, {float(pos.hi):.4f}]  {pos.status.value}")
    print(f"nu-_{n} in [{float(neg.lo):.4f}, {float(neg.hi):.4f}]  {neg.status.value}")
    # each bracket carries the tests behind it, so it can be re-verified
    print("   re-verified:", recheck(s, mom, pos), recheck(s, mom, neg))

# The plain string has no negative eigenvalues: reflecting it leaves nothing positive.

r = reflect(LEBESGUE)
b = bracket_eigenvalue(r, moments(r), 1, Fraction(1, 10), 1000)
print("reflected string, positive side:", b.status.value, "up to", b.limit)
