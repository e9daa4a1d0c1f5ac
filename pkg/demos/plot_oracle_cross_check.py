"""
Checking the lower bound with an exact oracle
=============================================

The oracle computes minimal polynomials of sums and products of radicals by
exact linear algebra, then measures their heights.  Every non-rational element
of Q((5/7)^(1/5)) should sit above the ramification lower bound.
"""
from northcott_towers.oracle import cross_check_corollary, minimal_poly, oracle_height, parse_expr, sample_expressions

e = parse_expr("2^(1/2)+3^(1/2)")
print("minimal polynomial of sqrt 2 + sqrt 3:", minimal_poly(e).to_text())
print("its height:", oracle_height(e))

report = cross_check_corollary(5, 5, sample_expressions(5, 7, 5, 12))
print("lower bound:", report.bound)
for row in report.rows:
    print(f"{str(row.expr):>40}  h = {float(row.height.mid):.6f}  above bound: {row.holds}")
print("all hold:", report.all_hold)
