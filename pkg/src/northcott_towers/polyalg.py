"""Dense integer polynomials: resultants, discriminants, irreducibility tests, Mahler measure.

Polynomials are stored constant term first.  The Mahler measure is certified:
approximate roots come from numpy / mpmath, and a Gerschgorin argument on the
Weierstrass corrections (computed in exact integer arithmetic) proves that each
approximation is within a known radius of exactly one true root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .exactnum import (DEFAULT_PRECISION, MAX_PRECISION, CertifiedReal, integer_root, log_interval,
                       _sqrt_bound)


class NotMonic(ValueError):
    pass


class NotSquarefree(ValueError):
    pass


class PrecisionExhausted(ArithmeticError):
    """A certified computation did not converge below the precision cap."""


def _strip(cs: Iterable[int]) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, ``coeffs[k]`` multiplies ``x**k``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError("IntPolynomial coefficients must be integers")
                c = c.numerator
            cs.append(int(c))
        object.__setattr__(self, "coeffs", _strip(cs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_rational_coeffs(cls, coeffs: Sequence[Fraction]) -> "IntPolynomial":
        """Clear denominators and return the primitive integer multiple."""
        den = 1
        for c in coeffs:
            den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
        return cls([Fraction(c) * den for c in coeffs]).primitive()

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse ``"-12005,0,0,0,0,1"`` (constant term first)."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not p for p in parts):
            raise ValueError(f"malformed coefficient list: {text!r}")
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"malformed coefficient list: {text!r}") from exc

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    # -- basic queries -------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        """Content 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def divmod_rational(self, other: "IntPolynomial") -> tuple[list[Fraction], list[Fraction]]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        q = [Fraction(0)] * max(0, len(r) - len(other.coeffs) + 1)
        lc = other.lc
        while len(r) >= len(other.coeffs) and any(r):
            shift = len(r) - len(other.coeffs)
            c = r[-1] / lc
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                r[i + shift] -= c * b
            while r and r[-1] == 0:
                r.pop()
        return q, r

    def exact_quotient(self, other: "IntPolynomial") -> "IntPolynomial | None":
        """``self / other`` if ``other`` divides ``self`` in Z[x], else None."""
        q, r = self.divmod_rational(other)
        if any(r) or any(c.denominator != 1 for c in q):
            return None
        return IntPolynomial(q)

    def compose_linear(self, a: Fraction, b: Fraction) -> "IntPolynomial":
        """Primitive integer multiple of ``self(a*x + b)``."""
        a, b = Fraction(a), Fraction(b)
        out = [Fraction(0)]
        for c in reversed(self.coeffs):
            # out = out * (a x + b) + c
            nxt = [Fraction(0)] * (len(out) + 1)
            for i, v in enumerate(out):
                nxt[i] += v * b
                nxt[i + 1] += v * a
            nxt[0] += c
            out = nxt
        return IntPolynomial.from_rational_coeffs(out)

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, bi in enumerate(b):
            r[i + shift] -= c * bi
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    f = lb ** e
    return [f * x for x in r]


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("subresultant step was not exact")
    return q


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Resultant via the subresultant pseudo-remainder sequence."""
    if f.is_zero() or g.is_zero():
        return 0
    A, B = list(f.coeffs), list(g.coeffs)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -1
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    a = IntPolynomial(A).content()
    b = IntPolynomial(B).content()
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a ** (len(B) - 1) * b ** (len(A) - 1)
    g_, h = 1, 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return 0
        denom = g_ * h ** delta
        B = [_exact_div(x, denom) for x in R]
        g_ = A[-1]
        h = _exact_div(g_ ** delta, h ** (delta - 1)) if delta >= 1 else h
        if len(B) == 1:
            break
    da = len(A) - 1
    h = _exact_div(B[0] ** da, h ** (da - 1))
    return s * t * h


def discriminant(f: IntPolynomial) -> int:
    """``(-1)**(n(n-1)/2) * resultant(f, f') / lc(f)``."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * _exact_div(resultant(f, f.derivative()), f.lc)


def is_squarefree(f: IntPolynomial) -> bool:
    if f.degree < 1:
        raise ValueError("squarefreeness needs degree >= 1")
    return f.degree == 1 or discriminant(f) != 0


def eisenstein_primes(f: IntPolynomial, candidates: Iterable[int]) -> set[int]:
    """Primes p among ``candidates`` for which the monic ``f`` is p-Eisenstein."""
    if f.degree < 1:
        raise ValueError("Eisenstein test needs degree >= 1")
    if f.lc != 1:
        raise NotMonic(f"{f} is not monic")
    lower = f.coeffs[:-1]
    return {p for p in set(candidates)
            if all(c % p == 0 for c in lower) and f.coeffs[0] % (p * p) != 0}


def _prime_factors_small(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """Exact positive k-th root of a positive rational, or None."""
    rn, en = integer_root(q.numerator, k)
    rd, ed = integer_root(q.denominator, k)
    return Fraction(rn, rd) if en and ed else None


def canonical_radical(base: Fraction, D: int) -> tuple[Fraction, int]:
    """Rewrite ``base**(1/D)`` with the smallest root degree (Capelli normal form)."""
    base = Fraction(base)
    if base <= 0 or D < 1:
        raise ValueError("radical needs a positive base and D >= 1")
    for p in _prime_factors_small(D):
        while D % p == 0:
            r = rational_root(base, p)
            if r is None:
                break
            base, D = r, D // p
    if base == 1:
        D = 1
    return base, D


def capelli_degree(base: Fraction, D: int) -> int:
    """Degree over Q of the positive real root ``base**(1/D)``.

    x^D - a is irreducible over Q iff a is not a p-th power for any prime
    p | D, and not of the form -4b^4 when 4 | D; a positive base never has the
    second form, so it suffices to strip p-th powers until none remain.
    """
    return canonical_radical(Fraction(base), D)[1]


# ---------------------------------------------------------------------------
# certified Mahler measure
# ---------------------------------------------------------------------------

def _approximate_roots(f: IntPolynomial, work: int, previous=None) -> list:
    high_first = list(reversed(f.coeffs))
    with mpmath.workprec(work + 16):
        if previous is None:
            try:
                scale = max(abs(c) for c in high_first)
                if scale.bit_length() > 900:
                    raise OverflowError
                guesses = np.roots(np.array([float(Fraction(c, scale)) for c in high_first]))
                previous = [mpmath.mpc(complex(z)) for z in guesses]
            except (OverflowError, np.linalg.LinAlgError, ValueError):
                previous = list(mpmath.polyroots(high_first, maxsteps=400, extraprec=work))
        tol = mpmath.mpf(2) ** (-work - 8)
        roots = []
        for z in previous:
            z = mpmath.mpc(z)
            for _ in range(80):
                y, dy = mpmath.polyval(high_first, z, derivative=True)
                if dy == 0:
                    break
                step = y / dy
                z -= step
                if abs(step) <= tol * max(1, abs(z)):
                    break
            roots.append(z)
        return roots


def _simultaneous_roots(f: IntPolynomial, work: int) -> list:
    with mpmath.workprec(work + 16):
        return list(mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=600, extraprec=2 * work))


def _to_gaussian(z, w: int) -> tuple[int, int]:
    with mpmath.workprec(w + 64):
        return int(mpmath.nint(mpmath.re(z) * mpmath.mpf(2) ** w)), int(mpmath.nint(mpmath.im(z) * mpmath.mpf(2) ** w))


def _root_disks(f: IntPolynomial, roots: list, work: int):
    """Certified disks ``(center, radius)`` around every root, or None if not separated.

    Uses the Gerschgorin localisation of the Weierstrass corrections
    W_i = f(z_i) / (lc * prod_{j != i}(z_i - z_j)): if the disks of radius
    n*|W_i| around z_i are pairwise disjoint, each holds exactly one root.
    """
    n, w = f.degree, work
    pts = [_to_gaussian(z, w) for z in roots]
    if len(set(pts)) < n:
        return None
    keep = work + 32
    radii = []
    for i, (a, b) in enumerate(pts):
        # f(z) * 2**(w n) by Horner over the Gaussian integers
        re, im = f.coeffs[-1], 0
        for k in range(n - 1, -1, -1):
            re, im = re * a - im * b, re * b + im * a
            re += f.coeffs[k] << (w * (n - k))
        fz2 = re * re + im * im
        # lower bound on prod |z_i - z_j|^2 * 2**(2w(n-1)), kept as P * 2**e
        P, e = 1, 0
        for j, (c, d) in enumerate(pts):
            if j != i:
                P *= (a - c) ** 2 + (b - d) ** 2
                extra = P.bit_length() - keep
                if extra > 0:
                    P >>= extra
                    e += extra
        # |W_i|^2 = fz2 / (lc^2 * 2**(2w) * P * 2**e)
        r2 = Fraction(n * n * fz2, f.lc ** 2 * P) / (Fraction(2) ** (2 * w + e))
        radii.append(_sqrt_bound(r2, keep, up=True))
    scale = Fraction(1, 1 << w)
    for i in range(n):
        for j in range(i + 1, n):
            d2 = Fraction((pts[i][0] - pts[j][0]) ** 2 + (pts[i][1] - pts[j][1]) ** 2) * scale * scale
            if (radii[i] + radii[j]) ** 2 >= d2:
                return None
    return [(pt, r) for pt, r in zip(pts, radii)]


def root_moduli(f: IntPolynomial, work: int = DEFAULT_PRECISION + 32, cap: int = MAX_PRECISION,
                roots: list | None = None) -> tuple[list[CertifiedReal], list, int]:
    """Certified enclosures of ``|root|`` for every root of a squarefree polynomial."""
    tries = 0
    while work <= cap:
        candidates = roots if roots is not None else _approximate_roots(f, work)
        disks = _root_disks(f, candidates, work)
        if disks is None:
            tries += 1
            candidates = _simultaneous_roots(f, work)
            disks = _root_disks(f, candidates, work)
        if disks is not None:
            scale = Fraction(1, 1 << work)
            out = []
            for (a, b), r in disks:
                m2 = Fraction(a * a + b * b) * scale * scale
                lo = _sqrt_bound(m2, work + 32, up=False) - r
                hi = _sqrt_bound(m2, work + 32, up=True) + r
                out.append(CertifiedReal(max(lo, Fraction(0)), hi))
            return out, candidates, work
        work *= 2
        roots = candidates
    raise PrecisionExhausted("could not separate the roots below the precision cap")


def log_mahler(f: IntPolynomial, precision: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> CertifiedReal:
    """Certified ``log M(f) = log|lc| + sum log max(1, |root|)`` for squarefree f."""
    if f.degree < 1:
        raise ValueError("Mahler measure needs degree >= 1")
    if not is_squarefree(f):
        raise NotSquarefree(f"{f} has a repeated factor")
    if f.degree == 1:
        return log_interval(max(abs(f.coeffs[0]), abs(f.coeffs[1])), precision)
    work = precision + 32 + f.degree.bit_length()
    roots = None
    while work <= cap:
        moduli, roots, work = root_moduli(f, work, cap, roots)
        total = log_interval(abs(f.lc), work)
        for m in moduli:
            if m.hi <= 1:
                continue
            if m.lo >= 1:
                total = total + m.log(work)
            else:
                total = total + CertifiedReal(0, m.log(work).hi)
        if total.width <= max(1, abs(total.mid)) * Fraction(1, 1 << precision):
            return total.round(precision + 8)
        work *= 2
    raise PrecisionExhausted("Mahler measure enclosure did not reach the requested width")


def height_from_minpoly(f: IntPolynomial, precision: int = DEFAULT_PRECISION,
                        cap: int = MAX_PRECISION) -> CertifiedReal:
    """Weil height ``log M(f) / deg f`` of a root of the (irreducible) polynomial f."""
    return log_mahler(f, precision + f.degree.bit_length(), cap) / f.degree
