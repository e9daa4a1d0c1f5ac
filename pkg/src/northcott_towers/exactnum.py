"""Certified real arithmetic on dyadic intervals, exact logarithms, primality.

Every real quantity in the package is carried as a :class:`CertifiedReal`, a
closed interval whose endpoints are dyadic rationals (``Fraction`` objects with
power-of-two denominators).  Addition, subtraction and multiplication are exact;
division and the transcendental functions round outward.

``log`` and ``exp`` are evaluated in fixed-point integer arithmetic with
explicit truncation bounds, so the returned intervals are enclosures by
construction, not by floating-point luck.
"""
from __future__ import annotations

import decimal
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Union

DEFAULT_PRECISION = 64
MAX_PRECISION = 4096

# below this bound the Miller-Rabin bases are a proof of primality
DETERMINISTIC_LIMIT = 1 << 64
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_RANDOM_ROUNDS = 64  # error < 4**-64 = 2**-128
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

Rational = Union[int, Fraction]


class UndecidableAtCap(ArithmeticError):
    """Intervals still overlap at the maximum precision (possible exact tie)."""


class UndecidableBoundary(UndecidableAtCap):
    """A prime candidate sits inside the uncertainty of a search bound."""


class NoPrimeInRange(ValueError):
    pass


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def round_down(x: Rational, prec: int) -> Fraction:
    """Largest dyadic with about ``prec`` significant bits that is <= x."""
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    if n == 0:
        return x
    if _is_dyadic(x) and abs(n).bit_length() <= prec:
        return x
    s = prec - (abs(n).bit_length() - d.bit_length())
    if s >= 0:
        return Fraction((n << s) // d, 1 << s)
    return Fraction((n // (d << -s)) << -s)


def round_up(x: Rational, prec: int) -> Fraction:
    return -round_down(-Fraction(x), prec)


def _bits(q: Fraction) -> int:
    return max(abs(q.numerator).bit_length(), q.denominator.bit_length())


@dataclass(frozen=True)
class CertifiedReal:
    """Closed interval ``[lo, hi]`` with dyadic endpoints enclosing a real number."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        if not (_is_dyadic(lo) and _is_dyadic(hi)):
            raise ValueError("interval endpoints must be dyadic rationals")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    # -- construction -------------------------------------------------------
    @classmethod
    def exact(cls, q: Rational) -> "CertifiedReal":
        return cls(q, q)

    @classmethod
    def enclose(cls, q: Rational, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        """Tightest ``prec``-bit dyadic enclosure of an arbitrary rational."""
        q = Fraction(q)
        if _is_dyadic(q):
            return cls(q, q)
        return cls(round_down(q, prec), round_up(q, prec))

    @classmethod
    def hull(cls, lo: Rational, hi: Rational, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        return cls(round_down(lo, prec), round_up(hi, prec))

    # -- inspection ---------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def precision(self) -> int:
        """Bit size implied by the endpoints, used when rounding is required."""
        return max(DEFAULT_PRECISION, _bits(self.lo), _bits(self.hi))

    def contains(self, x: Union[Rational, "CertifiedReal"]) -> bool:
        if isinstance(x, CertifiedReal):
            return self.lo <= x.lo and x.hi <= self.hi
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def mignitude(self) -> Fraction:
        return Fraction(0) if self.contains_zero() else min(abs(self.lo), abs(self.hi))

    def certainly_lt(self, other) -> bool:
        other = _coerce(other)
        return self.hi < other.lo

    def certainly_le(self, other) -> bool:
        other = _coerce(other)
        return self.hi <= other.lo

    def certainly_gt(self, other) -> bool:
        return _coerce(other).certainly_lt(self)

    def certainly_ge(self, other) -> bool:
        return _coerce(other).certainly_le(self)

    def overlaps(self, other) -> bool:
        other = _coerce(other)
        return not (self.hi < other.lo or other.hi < self.lo)

    def intersect(self, other: "CertifiedReal") -> "CertifiedReal":
        return CertifiedReal(max(self.lo, other.lo), min(self.hi, other.hi))

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return CertifiedReal(-self.hi, -self.lo)

    def __add__(self, other):
        other = _coerce(other, self.precision)
        return CertifiedReal(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.precision)
        return CertifiedReal(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _coerce(other, self.precision) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other, self.precision)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return CertifiedReal(min(ps), max(ps))

    __rmul__ = __mul__

    def scale(self, q: Rational, prec: int | None = None) -> "CertifiedReal":
        """Multiply by an exact rational, rounding outward only if ``q`` is not dyadic."""
        q = Fraction(q)
        a, b = sorted((self.lo * q, self.hi * q))
        if _is_dyadic(q):
            return CertifiedReal(a, b)
        p = prec or self.precision
        return CertifiedReal(round_down(a, p), round_up(b, p))

    def div(self, other, prec: int | None = None) -> "CertifiedReal":
        other = _coerce(other, self.precision)
        if other.contains_zero():
            raise ZeroDivisionError("divisor interval contains zero")
        p = prec or max(self.precision, other.precision)
        qs = (self.lo / other.lo, self.lo / other.hi, self.hi / other.lo, self.hi / other.hi)
        return CertifiedReal(round_down(min(qs), p), round_up(max(qs), p))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        return self.div(other)

    def __rtruediv__(self, other):
        return _coerce(other, self.precision).div(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return CertifiedReal.exact(1)
        lo, hi = self.lo ** k, self.hi ** k
        if k % 2 == 0 and self.contains_zero():
            return CertifiedReal(0, max(lo, hi))
        return CertifiedReal(min(lo, hi), max(lo, hi))

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return CertifiedReal(0, max(-self.lo, self.hi))

    def round(self, prec: int) -> "CertifiedReal":
        """Outward rounding to ``prec`` significant bits (shrinks the representation)."""
        return CertifiedReal(round_down(self.lo, prec), round_up(self.hi, prec))

    def max0(self, floor: Rational) -> "CertifiedReal":
        floor = Fraction(floor)
        return CertifiedReal(max(self.lo, floor), max(self.hi, floor))

    # -- elementary functions ----------------------------------------------
    def log(self, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        if self.lo <= 0:
            raise ValueError("log of an interval that is not strictly positive")
        if self.is_exact:
            return log_interval(self.lo, prec)
        return CertifiedReal(log_interval(self.lo, prec).lo, log_interval(self.hi, prec).hi)

    def exp(self, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        return exp_interval(self, prec)

    def sqrt(self, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        if self.lo < 0:
            raise ValueError("sqrt of an interval with negative part")
        return CertifiedReal(_sqrt_bound(self.lo, prec, up=False), _sqrt_bound(self.hi, prec, up=True))

    def rpow(self, gamma: Rational, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        """``x**gamma`` for a positive interval and a rational exponent."""
        gamma = Fraction(gamma)
        if gamma.denominator == 1 and gamma >= 0:
            return self ** int(gamma)
        if self.lo <= 0:
            raise ValueError("rational power of a non-positive interval")
        if gamma.denominator == 1:
            return CertifiedReal.exact(1).div(self ** int(-gamma), prec + 8).round(prec)
        return exp_interval(self.log(prec + 16).scale(gamma, prec + 16), prec)

    # -- display ------------------------------------------------------------
    def decimal_pair(self, digits: int = 20) -> tuple[str, str]:
        """Endpoints as decimal strings, rounded outward to ``digits`` significant digits."""
        return _to_decimal(self.lo, digits, up=False), _to_decimal(self.hi, digits, up=True)

    def __float__(self):
        return float(self.mid)

    def __str__(self):
        lo, hi = self.decimal_pair(16)
        return f"[{lo}, {hi}]"


Refinable = Union[CertifiedReal, Callable[[int], CertifiedReal], int, Fraction]


def _coerce(x, prec: int = DEFAULT_PRECISION) -> CertifiedReal:
    if isinstance(x, CertifiedReal):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, (int, Fraction)):
        return CertifiedReal.enclose(x, max(prec, DEFAULT_PRECISION))
    raise TypeError(f"cannot interpret {type(x).__name__} as a certified real")


def _to_decimal(q: Fraction, digits: int, up: bool) -> str:
    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_CEILING if up else decimal.ROUND_FLOOR,
                          Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)
    if q.denominator == 1:
        value = ctx.plus(decimal.Decimal(q.numerator))
    else:
        value = ctx.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator))
    return str(value)


def _sqrt_bound(q: Fraction, prec: int, up: bool) -> Fraction:
    if q == 0:
        return q
    # scale so the integer square root carries about prec bits
    s = max(0, prec - (q.numerator.bit_length() - q.denominator.bit_length()) // 2 + 2)
    scaled = (q.numerator << (2 * s)) // q.denominator
    r = math.isqrt(scaled)
    if up:
        if r * r != scaled or (q.numerator << (2 * s)) % q.denominator:
            r += 1
    return Fraction(r, 1 << s)


# ---------------------------------------------------------------------------
# fixed-point kernels; values are integers in units of 2**-w
# ---------------------------------------------------------------------------

def _atanh_fixed(t: int, w: int, up: bool) -> int:
    """Bound on atanh(t / 2**w) for 0 <= t/2**w <= 1/3."""
    if t == 0:
        return 0
    t2 = t * t
    shift = 2 * w
    power = t
    total = 0
    k = 1
    while True:
        if up:
            total += -(-power // k)
            if power <= 1:
                return total + 1  # remaining tail < power * t^2/(1-t^2) <= 1/8 unit
            power = -(-(power * t2) >> shift)
        else:
            total += power // k
            power = (power * t2) >> shift
            if power == 0:
                return total
        k += 2


@lru_cache(maxsize=64)
def _ln2_fixed(w: int) -> tuple[int, int]:
    one = 1 << w
    lo = 2 * _atanh_fixed(one // 3, w, up=False)
    hi = 2 * _atanh_fixed(-(-one // 3), w, up=True)
    return lo, hi


def _log_fixed(x: Fraction, w: int) -> tuple[int, int]:
    """Integer bounds (lo, hi) on log(x) * 2**w for a positive rational x."""
    n, d = x.numerator, x.denominator
    k = n.bit_length() - d.bit_length()
    y = x / (Fraction(2) ** k)
    while y * y > 2:
        y /= 2
        k += 1
    while 2 * y * y < 1:
        y *= 2
        k -= 1
    t = (y - 1) / (y + 1)
    num, den = abs(t.numerator), t.denominator
    t_floor = (num << w) // den
    t_ceil = -(-(num << w) // den)
    if t >= 0:
        a_lo, a_hi = _atanh_fixed(t_floor, w, False), _atanh_fixed(t_ceil, w, True)
    else:
        a_lo, a_hi = -_atanh_fixed(t_ceil, w, True), -_atanh_fixed(t_floor, w, False)
    l2_lo, l2_hi = _ln2_fixed(w)
    if k >= 0:
        base_lo, base_hi = k * l2_lo, k * l2_hi
    else:
        base_lo, base_hi = k * l2_hi, k * l2_lo
    return base_lo + 2 * a_lo, base_hi + 2 * a_hi


def _exp_taylor(r: int, w: int, up: bool) -> int:
    """Bound on exp(r / 2**w) * 2**w for 0 <= r / 2**w <= 1/2."""
    one = 1 << w
    term, total, n = one, one, 1
    while True:
        if up:
            term = -(-(term * r) // (n << w))
            total += term
            if term <= 1:
                return total + 1  # geometric tail below one unit
        else:
            term = (term * r) // (n << w)
            if term == 0:
                return total
            total += term
        n += 1


def _exp_fixed_signed(r: int, w: int, up: bool) -> int:
    if r >= 0:
        return _exp_taylor(r, w, up)
    # exp(-s) = 1 / exp(s)
    other = _exp_taylor(-r, w, not up)
    num = 1 << (2 * w)
    return -(-num // other) if up else num // other


def _exp_point(x: Fraction, w: int, up: bool) -> Fraction:
    """One-sided bound on exp(x) with relative error about 2**-w."""
    if x == 0:
        return Fraction(1)
    fx = float(x) if abs(x) < 2 ** 40 else None
    if fx is None:
        raise OverflowError("exponent too large for certified evaluation")
    k = round(fx / math.log(2))
    W = w + max(k.bit_length(), 1) + 8
    l2_lo, l2_hi = _ln2_fixed(W)
    scaled = x.numerator << W
    xf = scaled // x.denominator if not up else -(-scaled // x.denominator)
    if up:
        r = xf - (k * l2_lo if k >= 0 else k * l2_hi)
    else:
        r = xf - (k * l2_hi if k >= 0 else k * l2_lo)
    e = _exp_fixed_signed(r, W, up)
    return Fraction(e, 1 << W) * (Fraction(2) ** k)


# ---------------------------------------------------------------------------
# public elementary functions
# ---------------------------------------------------------------------------

def _relative_ok(lo: Fraction, hi: Fraction, prec: int) -> bool:
    if lo <= 0 <= hi:
        return lo == hi == 0
    scale = min(abs(lo), abs(hi))
    return (hi - lo) <= scale * Fraction(2, 1 << prec)


def log_interval(x: Rational, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of ``log(x)`` for a positive rational, relative width <= 2**(1-precision)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log_interval needs a positive argument")
    if x == 1:
        return CertifiedReal.exact(0)
    # extra working bits when x is close to 1 and log(x) is tiny
    t = abs(x - 1) / (x + 1)
    tiny = max(0, t.denominator.bit_length() - t.numerator.bit_length())
    w = precision + 24 + tiny
    while True:
        lo, hi = _log_fixed(x, w)
        lo_q = round_down(Fraction(lo, 1 << w), precision + 2)
        hi_q = round_up(Fraction(hi, 1 << w), precision + 2)
        if _relative_ok(lo_q, hi_q, precision):
            return CertifiedReal(lo_q, hi_q)
        w += 32


def exp_interval(x: Union[CertifiedReal, Rational], precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of ``exp`` over an interval; point inputs get relative width <= 2**(1-precision)."""
    x = _coerce(x, precision)
    w = precision + 24
    while True:
        lo = round_down(_exp_point(x.lo, w, up=False), precision + 2)
        hi = round_up(_exp_point(x.hi, w, up=True), precision + 2)
        if not x.is_exact or _relative_ok(lo, hi, precision):
            return CertifiedReal(lo, hi)
        w += 32


def as_evaluator(x: Refinable) -> Callable[[int], CertifiedReal]:
    """Turn a refinable quantity into a ``precision -> CertifiedReal`` function."""
    if callable(x) and not isinstance(x, CertifiedReal):
        return x
    value = _coerce(x) if not isinstance(x, CertifiedReal) else x
    return lambda prec: value


def precision_ladder(start: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> Iterator[int]:
    prec = start
    while True:
        yield prec
        if prec >= cap:
            return
        prec = min(2 * prec, cap)


def certified_less(a: CertifiedReal, b: CertifiedReal,
                   refine: Callable[[int], tuple[CertifiedReal, CertifiedReal]] | None = None,
                   *, start: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> bool:
    """Decide ``a < b`` by interval separation, re-evaluating through ``refine`` as needed.

    Raises UndecidableAtCap if the intervals still overlap at ``cap`` bits.
    """
    ladder = precision_ladder(start, cap)
    next(ladder)
    while True:
        if a.hi < b.lo:
            return True
        if a.lo >= b.hi:
            return False
        prec = next(ladder, None)
        if refine is None or prec is None:
            raise UndecidableAtCap(f"cannot separate {a} and {b}")
        a, b = refine(prec)


def certified_le(a: CertifiedReal, b: CertifiedReal,
                 refine: Callable[[int], tuple[CertifiedReal, CertifiedReal]] | None = None,
                 *, start: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> bool:
    """Decide ``a <= b``; an exact tie of point intervals counts as true."""
    ladder = precision_ladder(start, cap)
    next(ladder)
    while True:
        if a.hi <= b.lo:
            return True
        if a.lo > b.hi:
            return False
        prec = next(ladder, None)
        if refine is None or prec is None:
            raise UndecidableAtCap(f"cannot order {a} and {b}")
        a, b = refine(prec)


def less(a: Refinable, b: Refinable, *, strict: bool = True,
         start: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> bool:
    """Certified comparison of two refinable quantities (constants or precision callbacks)."""
    fa, fb = as_evaluator(a), as_evaluator(b)
    test = certified_less if strict else certified_le
    return test(fa(start), fb(start), lambda p: (fa(p), fb(p)), start=start, cap=cap)


# ---------------------------------------------------------------------------
# exact logarithms
# ---------------------------------------------------------------------------

def integer_root(n: int, k: int) -> tuple[int, bool]:
    """``(floor(n ** (1/k)), exact)`` for n >= 0."""
    if n < 0 or k < 1:
        raise ValueError("integer_root needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n, True
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x ** k == n


@dataclass(frozen=True, eq=False)
class ExactLog:
    """The real number ``log(argument) / divisor`` kept symbolically."""

    argument: int
    divisor: int = 1

    def __post_init__(self):
        if self.argument < 1 or self.divisor < 1:
            raise ValueError("ExactLog needs argument >= 1 and divisor >= 1")

    def _cmp(self, other: "ExactLog") -> int:
        # log(a)/m vs log(b)/n  <=>  a**n vs b**m
        lhs = self.argument ** other.divisor
        rhs = other.argument ** self.divisor
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        if not isinstance(other, ExactLog):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash(self.canonical())

    def canonical(self) -> tuple[int, int]:
        """Unique ``(argument, divisor)`` pair for this value."""
        a, e = self.argument, 1
        if a == 1:
            return 1, 1
        for k in range(a.bit_length(), 1, -1):
            r, exact = integer_root(a, k)
            if exact:
                a, e = r, k
                break
        g = math.gcd(e, self.divisor)
        return a ** (e // g), self.divisor // g

    def is_zero(self) -> bool:
        return self.argument == 1

    def times(self, k: int) -> "ExactLog":
        """Multiply by a positive integer."""
        if k < 1:
            raise ValueError("multiplier must be a positive integer")
        g = math.gcd(k, self.divisor)
        return ExactLog(self.argument ** (k // g), self.divisor // g)

    def certified(self, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
        return log_interval(self.argument, precision + 2).scale(Fraction(1, self.divisor), precision + 2)

    def __float__(self):
        return math.log(self.argument) / self.divisor

    def __str__(self):
        if self.argument == 1:
            return "0"
        return f"log({self.argument})" + (f"/{self.divisor}" if self.divisor != 1 else "")

    def __repr__(self):
        return f"ExactLog({self.argument}, {self.divisor})"


# ---------------------------------------------------------------------------
# primes
# ---------------------------------------------------------------------------

def _miller_rabin_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic (a proof) for ``n < 2**64`` using the first twelve prime
    bases.  Above that, 64 Miller-Rabin rounds with bases drawn from a
    generator seeded by ``n`` itself, so the answer is reproducible and the
    error probability for a composite is below ``2**-128``.
    """
    if n < 0:
        raise ValueError("is_prime expects a non-negative integer")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < DETERMINISTIC_LIMIT:
        bases = _DETERMINISTIC_BASES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(_RANDOM_ROUNDS)]
    return all(_miller_rabin_round(n, a, d, s) for a in bases)


def _decide(test: Callable[[CertifiedReal], bool | None], f: Callable[[int], CertifiedReal],
            start: int, cap: int, what: str) -> bool:
    for prec in precision_ladder(start, cap):
        verdict = test(f(prec))
        if verdict is not None:
            return verdict
    raise UndecidableBoundary(what)


def next_prime_in(lower: Refinable, upper: Refinable, exceeding: int = 0, *,
                  start: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> int:
    """Smallest prime ``p`` with ``lower <= p <= upper`` (certified) and ``p > exceeding``.

    ``lower`` and ``upper`` may be fixed enclosures or precision callbacks; a
    candidate that falls inside a bound's uncertainty triggers re-evaluation.
    """
    f_lo, f_hi = as_evaluator(lower), as_evaluator(upper)
    lo0, hi0 = f_lo(start), f_hi(start)
    if lo0.lo > hi0.hi:
        raise NoPrimeInRange(f"empty range {lo0} .. {hi0}")
    n = max(exceeding + 1, 2, math.ceil(lo0.lo))
    while True:
        if n > hi0.hi:
            raise NoPrimeInRange(f"no prime in [{lo0}, {hi0}] above {exceeding}")
        if is_prime(n):
            above = _decide(lambda iv, n=n: True if n >= iv.hi else (False if n < iv.lo else None),
                            f_lo, start, cap, f"{n} vs lower bound")
            if above:
                below = _decide(lambda iv, n=n: True if n <= iv.lo else (False if n > iv.hi else None),
                                f_hi, start, cap, f"{n} vs upper bound")
                if below:
                    return n
                raise NoPrimeInRange(f"no prime in range above {exceeding}")
        n += 1
