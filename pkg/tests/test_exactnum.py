from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from northcott_towers.exactnum import (CertifiedReal, ExactLog, NoPrimeInRange, UndecidableAtCap,
                                       UndecidableBoundary, certified_less, exp_interval, integer_root,
                                       is_prime, less, log_interval, next_prime_in, round_down, round_up)

mpmath.mp.dps = 60

positive_rationals = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6).filter(lambda q: q > 0)


def _contains(iv: CertifiedReal, x) -> bool:
    return mpmath.mpf(iv.lo.numerator) / iv.lo.denominator <= x <= mpmath.mpf(iv.hi.numerator) / iv.hi.denominator


def test_rounding_is_outward():
    x = Fraction(1, 3)
    assert round_down(x, 20) < x < round_up(x, 20)
    assert round_down(Fraction(3, 4), 5) == Fraction(3, 4)


def test_endpoints_must_be_dyadic_and_ordered():
    with pytest.raises(ValueError):
        CertifiedReal(Fraction(1, 3), Fraction(1))
    with pytest.raises(ValueError):
        CertifiedReal(Fraction(1), Fraction(0))


def test_enclose_and_exact():
    assert CertifiedReal.exact(5).is_exact
    iv = CertifiedReal.enclose(Fraction(1, 3), 64)
    assert iv.contains(Fraction(1, 3)) and iv.width < Fraction(1, 2**60)


def test_log_examples():
    assert log_interval(1) == CertifiedReal.exact(0)
    assert _contains(log_interval(2, 128), mpmath.log(2))
    assert _contains(log_interval(Fraction(5, 7), 128), mpmath.log(mpmath.mpf(5) / 7))
    with pytest.raises(ValueError):
        log_interval(0)


def test_log_relative_width():
    iv = log_interval(Fraction(1000001, 1000000), 64)
    assert iv.width <= abs(iv.mid) * Fraction(2, 2**64)


def test_exp_examples():
    assert exp_interval(0) == CertifiedReal.exact(1)
    assert _contains(exp_interval(1, 100), mpmath.e)
    assert _contains(exp_interval(-40, 100), mpmath.exp(-40))


@given(positive_rationals)
@settings(max_examples=200, deadline=None)
def test_log_matches_mpmath(x):
    assert _contains(log_interval(x, 80), mpmath.log(mpmath.mpf(x.numerator) / x.denominator))


@given(st.fractions(min_value=-50, max_value=50))
@settings(max_examples=200, deadline=None)
def test_exp_log_round_trip(x):
    y = exp_interval(x, 80)
    assert y.log(80).contains(x)


def test_arithmetic_is_exact_on_dyadics():
    a, b = CertifiedReal(Fraction(1, 2), Fraction(3, 4)), CertifiedReal(Fraction(-1), Fraction(2))
    assert a + b == CertifiedReal(Fraction(-1, 2), Fraction(11, 4))
    assert a * b == CertifiedReal(Fraction(-3, 4), Fraction(3, 2))
    assert (a - a).contains(0)


def test_division_and_powers():
    q = CertifiedReal.exact(1).div(CertifiedReal.exact(3), 64)
    assert q.contains(Fraction(1, 3))
    assert (CertifiedReal.exact(2) ** 10) == CertifiedReal.exact(1024)
    assert _contains(CertifiedReal.exact(3).rpow(Fraction(1, 2), 100), mpmath.sqrt(3))
    assert _contains(CertifiedReal.exact(3).rpow(Fraction(-3, 2), 100), mpmath.mpf(3) ** -1.5)


def test_decimal_pair_rounds_outward():
    lo, hi = log_interval(2, 128).decimal_pair(10)
    assert Fraction(lo) <= Fraction(mpmath.nstr(mpmath.log(2), 30)) <= Fraction(hi)
    assert lo == "0.6931471805" and hi == "0.6931471806"


def test_certified_comparison_refines():
    a = lambda p: log_interval(2, p)
    b = lambda p: log_interval(Fraction(2) + Fraction(1, 2**100), p)
    assert less(a, b)
    assert not less(b, a)


def test_equal_values_are_undecidable():
    a = lambda p: log_interval(4, p)
    b = lambda p: log_interval(2, p) * 2
    with pytest.raises(UndecidableAtCap):
        less(a, b, cap=512)


def test_certified_less_without_refinement():
    assert certified_less(CertifiedReal.exact(1), CertifiedReal.exact(2))
    with pytest.raises(UndecidableAtCap):
        certified_less(CertifiedReal(Fraction(0), Fraction(2)), CertifiedReal.exact(1))


def test_integer_root():
    assert integer_root(1024, 10) == (2, True)
    assert integer_root(1025, 10) == (2, False)


def test_exact_log_comparisons():
    assert ExactLog(7, 11) == ExactLog(49, 22)
    assert ExactLog(2) < ExactLog(3)
    assert ExactLog(8, 3).canonical() == (2, 1)
    assert ExactLog(7, 11).times(11) == ExactLog(7)
    assert str(ExactLog(7, 11)) == "log(7)/11"
    assert ExactLog(1, 5).is_zero()


@pytest.mark.parametrize("n,expected", [(1, False), (2, True), (7, True), (12005, False),
                                        (2**61 - 1, True), (2**64 + 13, True), (3215031751, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


@given(st.integers(min_value=2, max_value=10**5))
@settings(max_examples=300, deadline=None)
def test_is_prime_matches_sympy(n):
    import sympy
    assert is_prime(n) == sympy.isprime(n)


def test_next_prime_in_examples():
    assert next_prime_in(4, 6) == 5
    assert next_prime_in(lambda p: exp_interval(Fraction(1255898695271312734, 10**18), p),
                         lambda p: exp_interval(Fraction(1255898695271312734, 10**18), p) * 2, 3) == 5
    with pytest.raises(NoPrimeInRange):
        next_prime_in(24, 28)


def test_next_prime_boundary_ambiguity():
    # exp(log 5) sits exactly on the prime 5: no precision separates them
    with pytest.raises(UndecidableBoundary):
        next_prime_in(lambda p: exp_interval(log_interval(5, p), p), 10, cap=256)
