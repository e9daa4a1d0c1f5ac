"""
Heights of rational radicals
============================

The Weil height of (m/n)^(1/D), with m/n in lowest terms, is log max(m, n) / D
once the radical is written in canonical form.  This script compares that
closed form against a certified Mahler measure computed from the minimal
polynomial.
"""
from fractions import Fraction

from northcott_towers.heights import RadicalRational, degree, height, weighted_height
from northcott_towers.polyalg import height_from_minpoly

# a few radicals, one of them a disguised perfect power
for text in ["(5/7)^(1/5)", "(5/7)^(1/11)", "16^(1/4)", "(27/8)^(1/6)"]:
    r = RadicalRational.parse(text)
    f = r.minimal_polynomial()
    exact = height(r)
    measured = height_from_minpoly(f)
    print(f"{text:>14}  canonical {r}  degree {degree(r)}")
    print(f"{'':>14}  exact {exact}  ~ {float(exact.certified(64).mid):.12f}")
    print(f"{'':>14}  from Mahler measure {measured}")

# weighting by deg^gamma: with gamma = 1 the height of (5/7)^(1/11) is log 7
w = weighted_height(RadicalRational(5, 7, 11), Fraction(1))
print("h_1((5/7)^(1/11)) =", w.exact, "in", w.enclosure)
