"""
Generating a tower of radical extensions
========================================

Each level adjoins (p_i/q_i)^(1/d_i).  The generator picks the primes greedily
so that every arithmetic constraint of the requested weight case holds, and
the checker certifies each constraint with interval arithmetic.
"""
from fractions import Fraction

from northcott_towers.towers import WeightCase, check_tower, classify_intervals, generate_tower

# case A with floor c = 1/20 and weight gamma = 0
spec = generate_tower(WeightCase("A", Fraction(1, 20)), 3)
print(spec.to_text())
for report in check_tower(spec):
    status = "all pass" if report.all_pass else [c.name for c in report.failures()]
    print(f"level {report.level}: {len(report.constraints)} constraints, {status}")

# case C puts d_i = p_i and doubles the primes at every step
spec_c = generate_tower(WeightCase("C"), 5)
print("case C primes:", [(lv.p, lv.q) for lv in spec_c.levels])

# where the Bogomolov and Northcott properties switch on, case by case
for case in [WeightCase("A", Fraction(1, 20)), WeightCase("B1", None, Fraction(1, 2)),
             WeightCase("B2", Fraction(1, 2), Fraction(1, 3)), WeightCase("B3", None, Fraction(1, 2)),
             WeightCase("C")]:
    cl = classify_intervals(case)
    print(f"{case.tag:>2}: I_B = {cl.I_B}  I_N = {cl.I_N}  Nor = {cl.nor}")
