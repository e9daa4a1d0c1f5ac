"""Independent brute-force oracle: exact minimal polynomials and heights of small radical expressions.

Expressions are sums and products of rationals and at most two distinct
positive real radicals ``(m/n)**(1/D)``.  Two independent routes are used:

* an annihilating polynomial built from resultants (interpolated from
  integer evaluations, so everything stays exact);
* the minimal polynomial found by linear algebra over Q in the radical
  compositum.  Positive real radicals whose ratios are irrational are
  linearly independent over Q, so each element has exact coordinates
  indexed by classes ``prod p**(e_p)`` with every ``e_p`` in [0, 1).

The minimal polynomial is accepted only if it divides the annihilator
exactly and its certified evaluation at the element encloses zero.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import factorint

from .exactnum import DEFAULT_PRECISION, MAX_PRECISION, CertifiedReal, less
from .heights import RadicalRational
from .northcott import corollary_lower_bound
from .polyalg import IntPolynomial, PrecisionExhausted, height_from_minpoly, resultant

DEFAULT_CAP = 256


class CapExceeded(ValueError):
    pass


class OracleInconsistency(ArithmeticError):
    """The two independent routes disagree; this indicates a bug, never bad input."""


# ---------------------------------------------------------------------------
# expression trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rational:
    value: Fraction

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Radical:
    r: RadicalRational

    def __str__(self):
        return str(self.r) if self.r.den == 1 else f"({self.r.num}/{self.r.den})^(1/{self.r.root_deg})"


@dataclass(frozen=True)
class Sum:
    left: "RadicalExpr"
    right: "RadicalExpr"

    def __str__(self):
        return f"{self.left}+{self.right}"


@dataclass(frozen=True)
class Product:
    left: "RadicalExpr"
    right: "RadicalExpr"

    def __str__(self):
        return f"{_wrap(self.left)}*{_wrap(self.right)}"


RadicalExpr = Union[Rational, Radical, Sum, Product]


def _wrap(e) -> str:
    return f"({e})" if isinstance(e, Sum) else str(e)


def leaf(x) -> RadicalExpr:
    """Wrap a rational or RadicalRational, folding degree-1 radicals into rationals."""
    if isinstance(x, RadicalRational):
        return Rational(x.base) if x.root_deg == 1 else Radical(x)
    return Rational(Fraction(x))


_ATOM = re.compile(r"-?\(\d+(?:/\d+)?\)\^\(1/\d+\)|-?\d+\^\(1/\d+\)|-?\d+(?:/\d+)?")


def _split_top(s: str, op: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if ch == op and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_atom(tok: str) -> RadicalExpr:
    if not _ATOM.fullmatch(tok):
        raise ValueError(f"malformed term: {tok!r}")
    neg = tok.startswith("-")
    body = tok[1:] if neg else tok
    if "^" in body:
        e = leaf(RadicalRational.parse(body))
        return Product(Rational(Fraction(-1)), e) if neg else e
    return Rational(-Fraction(body) if neg else Fraction(body))


def parse_expr(text: str, cap: int = DEFAULT_CAP) -> RadicalExpr:
    """Parse ``term (("+"|"*") term)*`` where a term is a rational, a radical or ``rational*radical``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty expression")
    summands = []
    for chunk in _split_top(s, "+"):
        if not chunk:
            raise ValueError(f"malformed expression: {text!r}")
        factors = [_parse_atom(t) for t in _split_top(chunk, "*")]
        e = factors[0]
        for f in factors[1:]:
            e = Product(e, f)
        summands.append(e)
    e = summands[0]
    for f in summands[1:]:
        e = Sum(e, f)
    validate(e, cap)
    return e


def radical_leaves(e: RadicalExpr) -> list[RadicalRational]:
    """Radical leaves in occurrence order (with repetition)."""
    if isinstance(e, Radical):
        return [e.r]
    if isinstance(e, (Sum, Product)):
        return radical_leaves(e.left) + radical_leaves(e.right)
    return []


def conjugate_count(e: RadicalExpr) -> int:
    return math.prod(r.root_deg for r in radical_leaves(e))


def validate(e: RadicalExpr, cap: int = DEFAULT_CAP) -> None:
    if len(set(radical_leaves(e))) > 2:
        raise ValueError("expressions may use at most two distinct radicals")
    n = conjugate_count(e)
    if n > cap:
        raise CapExceeded(f"conjugate count {n} exceeds cap {cap}")


def evaluate(e: RadicalExpr, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Certified enclosure of the positive real evaluation."""
    if isinstance(e, Rational):
        return CertifiedReal.enclose(e.value, precision)
    if isinstance(e, Radical):
        return e.r.value(precision)
    a, b = evaluate(e.left, precision + 4), evaluate(e.right, precision + 4)
    return (a + b if isinstance(e, Sum) else a * b).round(precision + 2)


def _rational_value(e: RadicalExpr):
    """The value if the subtree contains no radicals, else None."""
    if isinstance(e, Rational):
        return e.value
    if isinstance(e, Radical):
        return None
    a, b = _rational_value(e.left), _rational_value(e.right)
    if a is None or b is None:
        return None
    return a + b if isinstance(e, Sum) else a * b


# ---------------------------------------------------------------------------
# annihilating polynomials via resultants
# ---------------------------------------------------------------------------

def _normalize(f: IntPolynomial) -> IntPolynomial:
    f = f.primitive()
    return -f if f.lc < 0 else f


def _interpolate(values: list[int]) -> IntPolynomial:
    """``n!`` times the degree-n polynomial taking ``values[k]`` at x = k (n = len(values) - 1)."""
    n = len(values) - 1
    diffs, row = [], list(values)
    for _ in range(n + 1):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    # f(x) = sum_k diffs[k] * x(x-1)...(x-k+1) / k!; scale by n! to stay in Z
    total = [0] * (n + 1)
    falling = [1]
    for k in range(n + 1):
        w = diffs[k] * (math.factorial(n) // math.factorial(k))
        for i, c in enumerate(falling):
            total[i] += w * c
        falling = [0] + falling
        for i in range(len(falling) - 1):
            falling[i] -= k * falling[i + 1]
    return IntPolynomial(total)


def _shifted(Q: IntPolynomial, x0: int) -> IntPolynomial:
    """``Q(x0 - y)`` as a polynomial in y."""
    base = IntPolynomial([x0, -1])
    out, power = IntPolynomial([]), IntPolynomial([1])
    for c in Q.coeffs:
        out = out + power * c
        power = power * base
    return out


def _homogenized(Q: IntPolynomial, x0: int) -> IntPolynomial:
    """``y**deg Q * Q(x0 / y)`` as a polynomial in y."""
    m = Q.degree
    return IntPolynomial([Q.coeffs[m - j] * x0 ** (m - j) for j in range(m + 1)])


def _combine(P: IntPolynomial, Q: IntPolynomial, product: bool) -> IntPolynomial:
    n = P.degree * Q.degree
    spec = _homogenized if product else _shifted
    return _normalize(_interpolate([resultant(P, spec(Q, x0)) for x0 in range(n + 1)]))


def annihilating_poly(e: RadicalExpr, cap: int = DEFAULT_CAP) -> IntPolynomial:
    """Exact integer polynomial vanishing at ``e``, primitive with positive leading coefficient."""
    validate(e, cap)
    q = _rational_value(e)
    if q is not None:
        return _normalize(IntPolynomial([-q.numerator, q.denominator]))
    if isinstance(e, Radical):
        return e.r.minimal_polynomial()
    a, b = _rational_value(e.left), _rational_value(e.right)
    if a is not None or b is not None:
        c, other = (a, e.right) if a is not None else (b, e.left)
        P = annihilating_poly(other, cap)
        if isinstance(e, Sum):
            return _normalize(P.compose_linear(1, -c))
        if c == 0:
            return IntPolynomial([0, 1])
        return _normalize(P.compose_linear(1 / c, 0))
    P, Q = annihilating_poly(e.left, cap), annihilating_poly(e.right, cap)
    return _combine(P, Q, isinstance(e, Product))


# ---------------------------------------------------------------------------
# exact coordinates in the radical compositum
# ---------------------------------------------------------------------------

Key = tuple[tuple[int, Fraction], ...]
Element = dict[Key, Fraction]


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def _split_exponents(exps: dict[int, Fraction]) -> tuple[Fraction, Key]:
    """``prod p**e_p`` as (rational coefficient, class key with exponents in [0, 1))."""
    coeff = Fraction(1)
    key = []
    for p in sorted(exps):
        e = exps[p]
        whole = math.floor(e)
        coeff *= Fraction(p) ** whole
        if e != whole:
            key.append((p, e - whole))
    return coeff, tuple(key)


def _radical_element(r: RadicalRational) -> Element:
    exps: dict[int, Fraction] = {}
    for p, k in _factor(r.num):
        exps[p] = Fraction(k, r.root_deg)
    for p, k in _factor(r.den):
        exps[p] = -Fraction(k, r.root_deg)
    coeff, key = _split_exponents(exps)
    return {key: coeff}


def _mul(a: Element, b: Element) -> Element:
    out: Element = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            exps = dict(ka)
            for p, e in kb:
                exps[p] = exps.get(p, 0) + e
            coeff, key = _split_exponents(exps)
            out[key] = out.get(key, 0) + ca * cb * coeff
    return {k: v for k, v in out.items() if v}


def _add(a: Element, b: Element) -> Element:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def to_element(e: RadicalExpr) -> Element:
    """Exact coordinates of ``e`` over the class basis."""
    if isinstance(e, Rational):
        return {(): e.value} if e.value else {}
    if isinstance(e, Radical):
        return _radical_element(e.r)
    a, b = to_element(e.left), to_element(e.right)
    return _add(a, b) if isinstance(e, Sum) else _mul(a, b)


def _minimal_from_element(v: Element, max_degree: int) -> IntPolynomial:
    rows: list[tuple[Key, Element, dict[int, Fraction]]] = []
    power: Element = {(): Fraction(1)}
    for k in range(max_degree + 1):
        vec, combo = dict(power), {k: Fraction(1)}
        for pivot, rvec, rcombo in rows:
            c = vec.get(pivot)
            if c:
                t = c / rvec[pivot]
                vec = {key: val for key, val in _add(vec, {kk: -t * vv for kk, vv in rvec.items()}).items()}
                for i, w in rcombo.items():
                    combo[i] = combo.get(i, 0) - t * w
        if not vec:
            return _normalize(IntPolynomial.from_rational_coeffs([combo.get(i, 0) for i in range(k + 1)]))
        rows.append((next(iter(vec)), vec, combo))
        power = _mul(power, v)
    raise CapExceeded(f"no linear relation among the first {max_degree + 1} powers")


def minimal_poly(e: RadicalExpr, precision: int = DEFAULT_PRECISION, cap: int = DEFAULT_CAP,
                 max_precision: int = MAX_PRECISION) -> IntPolynomial:
    """Minimal polynomial over Q of the positive real evaluation of ``e``.

    Found as the first linear dependency among exact powers of ``e``, then
    verified by exact division into the resultant annihilator and by a
    certified zero enclosure.
    """
    validate(e, cap)
    distinct = set(radical_leaves(e))
    bound = math.prod(r.root_deg for r in distinct)
    f = _minimal_from_element(to_element(e), bound)
    A = annihilating_poly(e, cap)
    _, rem = A.divmod_rational(f)
    if any(rem):
        raise OracleInconsistency(f"{f} does not divide the annihilator of {e}")
    prec = precision
    while prec <= max_precision:
        if f(evaluate(e, prec)).contains_zero():
            return f
        prec *= 2
    raise PrecisionExhausted(f"could not certify that {f} vanishes at {e}")


def oracle_height(e: RadicalExpr, precision: int = DEFAULT_PRECISION, cap: int = DEFAULT_CAP) -> CertifiedReal:
    return height_from_minpoly(minimal_poly(e, precision, cap), precision)


# ---------------------------------------------------------------------------
# corollary cross-check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossCheckRow:
    expr: RadicalExpr
    degree: int
    height: CertifiedReal
    holds: bool


@dataclass(frozen=True)
class CrossCheckReport:
    p: int
    d: int
    bound: CertifiedReal
    rows: tuple[CrossCheckRow, ...]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.rows)


def cross_check_corollary(p: int, d: int, samples, precision: int = DEFAULT_PRECISION,
                          cap: int = DEFAULT_CAP) -> CrossCheckReport:
    """Certify ``oracle_height(e) > log(p)/d - log(d)/(2(d-1))`` for every sample outside Q."""
    rows = []
    for e in samples:
        f = minimal_poly(e, precision, cap)
        if f.degree < 2:
            raise ValueError(f"{e} is rational, so it does not lie outside the base")
        holds = less(lambda prec: corollary_lower_bound(p, d, prec),
                     lambda prec, f=f: height_from_minpoly(f, prec), start=precision)
        rows.append(CrossCheckRow(e, f.degree, height_from_minpoly(f, precision), holds))
    return CrossCheckReport(p, d, corollary_lower_bound(p, d, precision), tuple(rows))


_COEFFS = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-1), Fraction(5, 3))


def sample_expressions(p: int, q: int, d: int, count: int = 20, seed: int = 0) -> list[RadicalExpr]:
    """Deterministic sample of elements of Q((p/q)**(1/d)) that are not rational.

    Requires distinct primes p, q and a prime d, so every power r**k with
    0 < k < d has degree d.
    """
    if p == q:
        raise ValueError("p and q must differ")
    gens = [Radical(RadicalRational(p ** k, q ** k, d)) for k in range(1, d)]
    if any(g.r.root_deg != d for g in gens):
        raise ValueError("(p/q)^(k/d) must have degree d for 0 < k < d")
    pool: list[RadicalExpr] = list(gens)
    for g in gens:
        for a in _COEFFS[1:]:
            pool.append(Product(Rational(a), g))
        for b in _COEFFS:
            pool.append(Sum(g, Rational(b)))
            pool.append(Sum(Product(Rational(Fraction(2)), g), Rational(b)))
    for i, gi in enumerate(gens, 1):
        for j, gj in enumerate(gens, 1):
            if i < j:
                pool.append(Sum(gi, gj))
            if i <= j and (i + j) % d:
                pool.append(Product(gi, gj))
    rng = random.Random(seed)
    head, tail = pool[:len(gens)], pool[len(gens):]
    rng.shuffle(tail)
    return (head + tail)[:count]
