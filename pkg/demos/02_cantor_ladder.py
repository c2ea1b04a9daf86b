"""
The Cantor ladder as a weight
=============================

P is the Cantor staircase: a singular weight with no density anywhere.
The eigenvalues have no closed form, so a float estimate from a deep mesh is
compared with the certified brackets.
"""
from fractions import Fraction

import numpy as np

from selfsim_sl import CANTOR, approx_eigenvalues, bracket_eigenvalue, moments, sample

mom = moments(CANTOR)
print("theta^2 =", CANTOR.theta_sq, " P0 =", mom.p0, " P1 =", mom.p1, " ||P||^2 =", mom.norm_sq)

# a quick look at the staircase itself
f = sample(CANTOR, 6, 27)
print("staircase on 27 cells:", np.round(np.asarray(f.values, dtype=float), 3))
print("sup error bound:", f.sup_error_bound)

est = approx_eigenvalues(CANTOR, mom, 3, 8, 1e4)
for e in est:
    b = bracket_eigenvalue(CANTOR, mom, e.n, Fraction(1), 10_000)
    print(f"n={e.n}: certified [{float(b.lo):.4f}, {float(b.hi):.4f}] {b.status.value};  float estimate {e.value:.4f}")
