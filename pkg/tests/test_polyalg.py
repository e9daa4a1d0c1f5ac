from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from northcott_towers.polyalg import (IntPolynomial, NotSquarefree, canonical_radical, capelli_degree,
                                      discriminant, eisenstein_primes, height_from_minpoly, is_squarefree,
                                      log_mahler, rational_root, resultant)

X = sympy.Symbol("x")
coeff_lists = st.lists(st.integers(-30, 30), min_size=1, max_size=7).filter(lambda c: c[-1] != 0)


def _sylvester(f: IntPolynomial, g: IntPolynomial) -> int:
    m, n = f.degree, g.degree
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f.coeffs)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g.coeffs)) + [0] * (m - 1 - i))
    return int(sympy.Matrix(rows).det())


def test_parse_and_text():
    f = IntPolynomial.parse("-12005,0,0,0,0,1")
    assert f.degree == 5 and f.lc == 1 and f.coeffs[0] == -12005
    assert IntPolynomial.parse(f.to_text()) == f
    assert str(IntPolynomial([-1, -1, 1])) == "x^2 - x - 1"
    with pytest.raises(ValueError):
        IntPolynomial.parse("1,,2")


def test_arithmetic():
    f, g = IntPolynomial([1, 1]), IntPolynomial([-1, 1])
    assert f * g == IntPolynomial([-1, 0, 1])
    assert (f * g).exact_quotient(g) == f
    assert IntPolynomial([1, 0, 1]).exact_quotient(g) is None
    assert f.compose_linear(Fraction(1, 2), 0) == IntPolynomial([2, 1])
    assert IntPolynomial([0, 0, 3]).derivative() == IntPolynomial([0, 6])


@pytest.mark.parametrize("f,g,expected", [
    ([-1, 0, 1], [-2, 1], 3),
    ([1, 0, 1], [-1, 0, 1], 4),
])
def test_resultant_examples(f, g, expected):
    assert resultant(IntPolynomial(f), IntPolynomial(g)) == expected


@given(coeff_lists, coeff_lists)
@settings(max_examples=150, deadline=None)
def test_resultant_matches_sylvester(a, b):
    f, g = IntPolynomial(a), IntPolynomial(b)
    if f.degree == 0 and g.degree == 0:
        return
    assert resultant(f, g) == _sylvester(f, g)


@pytest.mark.parametrize("coeffs,expected", [
    ([-1, -1, 1], 5),
    ([1, 0, 1], -4),
    ([-12005, 0, 0, 0, 0, 1], 5**9 * 7**16),
    ([-18, 0, 0, 1], -27 * 18**2),
])
def test_discriminant_examples(coeffs, expected):
    assert discriminant(IntPolynomial(coeffs)) == expected


@given(coeff_lists.filter(lambda c: len(c) >= 3))
@settings(max_examples=100, deadline=None)
def test_discriminant_matches_sympy(c):
    f = IntPolynomial(c)
    assert discriminant(f) == int(sympy.discriminant(sympy.Poly(list(reversed(c)), X)))


def test_squarefree():
    assert is_squarefree(IntPolynomial([-1, -1, 1]))
    assert not is_squarefree(IntPolynomial([1, 2, 1]))
    with pytest.raises(NotSquarefree):
        log_mahler(IntPolynomial([1, 2, 1]))


def test_eisenstein():
    assert eisenstein_primes(IntPolynomial([-12005, 0, 0, 0, 0, 1]), [2, 3, 5, 7]) == {5}
    assert eisenstein_primes(IntPolynomial([-(7**5), 0, 0, 0, 0, 1]), [5, 7]) == set()
    assert eisenstein_primes(IntPolynomial([-(5**4) * 7, 0, 0, 0, 0, 1]), [5, 7]) == {7}


def test_canonical_radical():
    assert canonical_radical(Fraction(4), 4) == (Fraction(2), 2)
    assert canonical_radical(Fraction(8), 6) == (Fraction(2), 2)
    assert canonical_radical(Fraction(25, 49), 5) == (Fraction(25, 49), 5)
    assert rational_root(Fraction(32, 243), 5) == Fraction(2, 3)
    assert rational_root(Fraction(2), 2) is None


@pytest.mark.parametrize("base,D,expected", [(Fraction(16), 4, 1), (Fraction(5, 7), 11, 11), (Fraction(9), 4, 2)])
def test_capelli_degree(base, D, expected):
    assert capelli_degree(base, D) == expected


# log M values from 40-digit mpmath.polyroots
@pytest.mark.parametrize("coeffs,value,tol", [
    ([-1, -1, 1], "0.4812118250596034474977589134243684231352", "1e-30"),
    ([-5, 0, 0, 0, 0, 7], "1.945910149055313305105352743443179729637", "1e-30"),
    ([-12, 35, -70, 70, -35, 7], "3.502834176616504732022019538138753072581", "1e-30"),
])
def test_log_mahler_values(coeffs, value, tol):
    m = log_mahler(IntPolynomial(coeffs), 128)
    assert abs(m.mid - Fraction(value)) < Fraction(tol)
    assert m.width < Fraction(1, 10**30)


def test_height_from_minpoly():
    h = height_from_minpoly(IntPolynomial([1, 0, -10, 0, 1]), 100)
    assert abs(h.mid - Fraction("0.5731079173902944219501968278370038579055")) < Fraction(1, 10**25)
    h = height_from_minpoly(IntPolynomial([-2, 1]))
    assert abs(h.mid - Fraction("0.6931471805599453094172321")) < Fraction(1, 10**18)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=9).filter(lambda c: c[-1] != 0 and c[0] != 0))
@settings(max_examples=60, deadline=None)
def test_log_mahler_matches_mpmath(c):
    f = IntPolynomial(c)
    if not is_squarefree(f):
        return
    mpmath.mp.dps = 50
    roots = mpmath.polyroots(list(reversed(c)), maxsteps=400, extraprec=400)
    ref = mpmath.log(abs(c[-1])) + sum(mpmath.log(max(1, abs(z))) for z in roots)
    m = log_mahler(f, 80)
    assert abs(mpmath.mpf(float(m.mid)) - ref) < 1e-12
