"""
Certified spectrum of the plain string
======================================

With the Lebesgue weight (P(x) = x) the problem is -y'' = lam y on [0, 1],
whose eigenvalues are (n pi)^2.  We bracket the first few and compare.
"""
import math
from fractions import Fraction

from selfsim_sl import LEBESGUE, bracket_eigenvalue, moments

mom = moments(LEBESGUE)
print("moments:", mom)

# brackets narrower than 0.1% of the eigenvalue
for n in (1, 2, 3):
    exact = (n * math.pi) ** 2
    tol = Fraction(math.floor(exact), 1000)
    b = bracket_eigenvalue(LEBESGUE, mom, n, tol, 10_000)
    print(f"n={n}: [{float(b.lo):.6f}, {float(b.hi):.6f}]  {b.status.value}  (n pi)^2 = {exact:.6f}")
    assert b.lo <= exact <= b.hi

# The deepest level actually used says how fine the Galerkin mesh had to be.
print("levels used for n=3:", sorted({t.m_used for t in b.tests}))
