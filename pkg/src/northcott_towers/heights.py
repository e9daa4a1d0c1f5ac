"""Weil heights and weighted heights of positive real radicals ``(m/n)**(1/D)``."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import DEFAULT_PRECISION, CertifiedReal, ExactLog, log_interval
from .polyalg import IntPolynomial, canonical_radical, capelli_degree


@dataclass(frozen=True)
class RadicalRational:
    """The positive real number ``(num/den)**(1/root_deg)``, kept in canonical form.

    On construction the fraction is reduced and every perfect p-th power with
    p | root_deg is pulled out, so ``root_deg`` equals the degree over Q.
    """

    num: int
    den: int = 1
    root_deg: int = 1

    def __post_init__(self):
        if self.num < 1 or self.den < 1 or self.root_deg < 1:
            raise ValueError("radical needs positive num, den and root degree")
        base, D = canonical_radical(Fraction(self.num, self.den), self.root_deg)
        object.__setattr__(self, "num", base.numerator)
        object.__setattr__(self, "den", base.denominator)
        object.__setattr__(self, "root_deg", D)

    @classmethod
    def parse(cls, text: str) -> "RadicalRational":
        """Read ``"(m/n)^(1/D)"``, ``"m^(1/D)"``, ``"m/n"`` or ``"m"``."""
        s = text.replace(" ", "")
        m = re.fullmatch(r"\((\d+)(?:/(\d+))?\)\^\(1/(\d+)\)|(\d+)\^\(1/(\d+)\)|(\d+)(?:/(\d+))?", s)
        if not m:
            raise ValueError(f"malformed radical: {text!r}")
        if m.group(1):
            return cls(int(m.group(1)), int(m.group(2) or 1), int(m.group(3)))
        if m.group(4):
            return cls(int(m.group(4)), 1, int(m.group(5)))
        return cls(int(m.group(6)), int(m.group(7) or 1), 1)

    @property
    def base(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_one(self) -> bool:
        return self.num == self.den == 1

    def minimal_polynomial(self) -> IntPolynomial:
        """``den * x**D - num``, irreducible by the canonical form."""
        return IntPolynomial([-self.num] + [0] * (self.root_deg - 1) + [self.den])

    def value(self, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
        if self.root_deg == 1:
            return CertifiedReal.enclose(self.base, precision)
        return log_interval(self.base, precision + 8).scale(Fraction(1, self.root_deg), precision + 8).exp(precision)

    def __str__(self):
        frac = str(self.num) if self.den == 1 else f"{self.num}/{self.den}"
        if self.root_deg == 1:
            return frac
        if self.den == 1:
            return f"{frac}^(1/{self.root_deg})"
        return f"({frac})^(1/{self.root_deg})"


@dataclass(frozen=True)
class WeightedHeightValue:
    exact: Optional[ExactLog]
    enclosure: CertifiedReal
    gamma: Fraction
    degree: int


def height(r: RadicalRational) -> ExactLog:
    """``h(r) = log max(m, n) / D``, using h(b) = h(b**D)/D."""
    return ExactLog(max(r.num, r.den), r.root_deg)


def degree(r: RadicalRational) -> int:
    return capelli_degree(r.base, r.root_deg)


def weighted_height(r: RadicalRational, gamma, precision: int = DEFAULT_PRECISION) -> WeightedHeightValue:
    """``deg(r)**gamma * h(r)``; the symbolic form is kept for gamma in {0, 1}."""
    gamma = Fraction(gamma)
    d = degree(r)
    h = height(r)
    if gamma == 0:
        exact = h
    elif gamma == 1:
        exact = h.times(d)
    else:
        exact = None
    if exact is not None:
        enclosure = exact.certified(precision)
    elif h.is_zero():
        enclosure = CertifiedReal.exact(0)
    else:
        weight = CertifiedReal.exact(d).rpow(gamma, precision + 8)
        enclosure = (weight * h.certified(precision + 8)).round(precision + 4)
    return WeightedHeightValue(exact, enclosure, gamma, d)


def product_as_radical(a: RadicalRational, b: RadicalRational) -> RadicalRational:
    """Canonical radical for the positive real product ``a * b``."""
    L = a.root_deg * b.root_deg // math.gcd(a.root_deg, b.root_deg)
    ea, eb = L // a.root_deg, L // b.root_deg
    num = a.num ** ea * b.num ** eb
    den = a.den ** ea * b.den ** eb
    g = math.gcd(num, den)
    return RadicalRational(num // g, den // g, L)
