"""
Sandwiching the Northcott number
================================

At every level the smallest height of a new element lies between a
ramification lower bound and the height of the generator itself.  Taking the
minimum over the tail of the tower brackets the limit inferior.
"""
from fractions import Fraction

from northcott_towers.towers import WeightCase, generate_tower
from northcott_towers.northcott import northcott_sandwich

spec = generate_tower(WeightCase("A", Fraction(1, 20)), 3)

# probe just below, at and above the critical weight
for delta in [Fraction(-1, 10), Fraction(0), Fraction(1, 10)]:
    rep = northcott_sandwich(spec, delta)
    print(f"delta = {delta}: prediction {rep.verdict}, consistent = {rep.consistent}")
    print(rep.to_csv(8))
