"""
Mahler measures and discriminants
=================================

The Mahler measure collects the roots of a polynomial outside the unit disc.
The discriminant of x^d - p^a q^b is divisible by (pq)^(d-1), and both primes
satisfy Eisenstein's criterion for that binomial.
"""
from sympy import factorint

from northcott_towers.northcott import divisibility_report
from northcott_towers.polyalg import IntPolynomial, discriminant, eisenstein_primes, log_mahler

# golden ratio polynomial: log M = log((1 + sqrt 5) / 2)
golden = IntPolynomial([-1, -1, 1])
print("log M(x^2 - x - 1) =", log_mahler(golden))
print("disc(x^2 - x - 1)  =", discriminant(golden))

# a leading coefficient contributes directly: log M(7x^5 - 5) = log 7
print("log M(7x^5 - 5)    =", log_mahler(IntPolynomial([-5, 0, 0, 0, 0, 7])))

# ramified primes of the radical extension generated by (5/7)^(1/5)
for p, q, d in [(5, 7, 5), (7, 11, 11), (2, 3, 3)]:
    rep = divisibility_report(p, q, d)
    print(f"p={p} q={q} d={d}: disc = {factorint(rep.discriminant)}  holds={rep.holds}")

# 5^2 divides the constant term, so only 7 passes the test here
f = IntPolynomial([-(5**4) * 7, 0, 0, 0, 0, 1])
print("Eisenstein primes of x^5 - 5^4*7:", sorted(eisenstein_primes(f, [2, 3, 5, 7])))
