"""
Non-positive weights
====================

With gamma <= 0 the weighted heights of 2^(1/3^n) shrink to zero, so no
Northcott-type property can hold.  The script lists the decay and certifies a
product inequality along the way.
"""
from fractions import Fraction

from northcott_towers.northcott import demo_decreasing, demo_nonpositive

rows = demo_nonpositive(Fraction(-1, 2), 6)
for r in rows:
    print(f"n={r.n}  h = {r.h_gamma_a_exact} ~ {float(r.h_gamma_a.mid):.3e}  chain certified: {r.chain_holds}")
print("strictly decreasing:", demo_decreasing(rows))
