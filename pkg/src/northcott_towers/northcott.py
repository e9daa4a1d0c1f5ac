"""Height bounds, the per-level Northcott sandwich, and the non-positive weight demonstration."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import DEFAULT_PRECISION, CertifiedReal, ExactLog, less, log_interval
from .heights import RadicalRational, degree, height, product_as_radical, weighted_height
from .polyalg import IntPolynomial, discriminant, eisenstein_primes
from .towers import TowerSpec

CSV_COLUMNS = ("level", "d", "p", "q", "lower_lo", "lower_hi", "upper_lo", "upper_hi")


def silverman_bound(log_norm_disc, d: int, deg_k: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``(log N(D)/(d [K:Q]) - log d) / (2(d-1))``; negative values mean the bound is vacuous."""
    if d < 2 or deg_k < 1:
        raise ValueError("need d >= 2 and [K:Q] >= 1")
    wp = precision + 16
    L = log_norm_disc if isinstance(log_norm_disc, CertifiedReal) else CertifiedReal.enclose(Fraction(log_norm_disc), wp)
    if L.lo < 0:
        raise ValueError("log norm of a discriminant is non-negative")
    inner = L.scale(Fraction(1, d * deg_k), wp) - log_interval(d, wp)
    return inner.scale(Fraction(1, 2 * (d - 1)), wp).round(precision + 4)


def ramification_log_bound(p: int, q: int, d: int, deg_k: int = 1,
                           precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``[K:Q](d-1) log(pq)``: what p, q totally ramified forces on log N(D_{L/K})."""
    if d < 2 or deg_k < 1:
        raise ValueError("need d >= 2 and [K:Q] >= 1")
    return log_interval(p * q, precision + 8) * (deg_k * (d - 1))


def corollary_lower_bound(p: int, d: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``log(p)/d - log(d)/(2(d-1))``, a floor for heights of elements outside the base."""
    if d < 2:
        raise ValueError("need d >= 2")
    wp = precision + 16
    b = log_interval(p, wp).scale(Fraction(1, d), wp) - log_interval(d, wp).scale(Fraction(1, 2 * (d - 1)), wp)
    return b.round(precision + 4)


@dataclass(frozen=True)
class DivisibilityReport:
    p: int
    q: int
    d: int
    discriminant: int
    p_divides: bool
    q_divides: bool
    p_eisenstein: bool
    q_eisenstein: bool

    @property
    def holds(self) -> bool:
        return self.p_divides and self.q_divides and self.p_eisenstein and self.q_eisenstein


def divisibility_report(p: int, q: int, d: int) -> DivisibilityReport:
    """Check ``p**(d-1) q**(d-1) | disc(x**d - p q**(d-1))`` and both Eisenstein presentations."""
    if p == q:
        raise ValueError("p and q must differ")
    if d < 2:
        raise ValueError("need d >= 2")
    f = IntPolynomial.monomial(d) - IntPolynomial([p * q ** (d - 1)])
    g = IntPolynomial.monomial(d) - IntPolynomial([p ** (d - 1) * q])
    D = discriminant(f)
    e = d - 1
    return DivisibilityReport(p, q, d, D, D % p ** e == 0, D % q ** e == 0,
                              p in eisenstein_primes(f, [p]), q in eisenstein_primes(g, [q]))


def verify_divisibility(p: int, q: int, d: int) -> bool:
    return divisibility_report(p, q, d).holds


# ---------------------------------------------------------------------------
# per-level sandwich
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelBounds:
    level: int
    d: int
    p: int
    q: int
    lower: CertifiedReal
    upper: CertifiedReal
    upper_exact: Optional[ExactLog] = None


def level_bounds(spec: TowerSpec, i: int, delta, precision: int = DEFAULT_PRECISION) -> LevelBounds:
    """Certified ``[lower, upper]`` for the infimum of h_delta over the new elements at level i.

    lower = d**delta (log p/d - log d/(2(d-1))), using deg(b) >= d for new elements;
    upper = h_delta((p/q)**(1/d)) = log(q) / d**(1-delta), attained by the level generator.
    """
    lv = spec.level(i)
    d, p, q = lv.d, lv.p, lv.q
    if not p < q:
        raise ValueError(f"level {i} needs p < q")
    delta = Fraction(delta)
    wp = precision + 16
    w = CertifiedReal.exact(d).rpow(delta, wp)
    lower = (w * corollary_lower_bound(p, d, wp)).round(precision + 4)
    gen = RadicalRational(p, q, d)
    if gen.root_deg != d:
        raise ValueError(f"level {i}: (p/q)^(1/d) is not of degree d")
    hv = weighted_height(gen, delta, wp)
    return LevelBounds(i, d, p, q, lower, hv.enclosure.round(precision + 4), hv.exact)


@dataclass(frozen=True)
class Verdict:
    kind: str  # ConvergesTo | DivergesToInfinity | CollapsesToZero
    target: Optional[Fraction] = None

    def __str__(self):
        return f"ConvergesTo({self.target})" if self.kind == "ConvergesTo" else self.kind


@dataclass(frozen=True)
class NorthcottReport:
    spec: TowerSpec
    delta: Fraction
    per_level: tuple[LevelBounds, ...]
    sandwich_estimate: CertifiedReal
    suffix_sandwiches: tuple[CertifiedReal, ...]
    verdict: Verdict
    consistent: bool
    checks: tuple[tuple[str, bool], ...]

    def to_csv(self, digits: int = 17) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for lb in self.per_level:
            w.writerow([lb.level, lb.d, lb.p, lb.q, *lb.lower.decimal_pair(digits), *lb.upper.decimal_pair(digits)])
        return buf.getvalue()

    def summary(self) -> str:
        lo, hi = self.sandwich_estimate.decimal_pair(12)
        lines = [f"delta: {self.delta}",
                 f"prediction: {self.verdict}",
                 f"sandwich: [{lo}, {hi}]",
                 f"consistent: {'yes' if self.consistent else 'no'}"]
        lines += [f"  {name}: {'ok' if ok else 'FAILED'}" for name, ok in self.checks]
        return "\n".join(lines)


def predicted_verdict(spec: TowerSpec, delta) -> Verdict:
    """What the interval classification predicts for Nor_delta of the tower."""
    case, delta = spec.case, Fraction(delta)
    if delta < case.gamma:
        return Verdict("CollapsesToZero")
    if delta > case.gamma:
        return Verdict("DivergesToInfinity")
    if case.tag in ("A", "B2"):
        return Verdict("ConvergesTo", case.c)
    if case.tag == "B1":
        return Verdict("CollapsesToZero")
    return Verdict("DivergesToInfinity")


def _non_increasing(values: list[CertifiedReal]) -> bool:
    return all(b.certainly_le(a) for a, b in zip(values, values[1:]))


def northcott_sandwich(spec: TowerSpec, delta, precision: int = DEFAULT_PRECISION) -> NorthcottReport:
    """Per-level bounds plus a finite-truncation trend check against the predicted Nor_delta.

    Nothing here computes a limit: the report says whether the available
    levels are consistent with the prediction.
    """
    if not spec.levels:
        raise ValueError("the tower has no levels")
    delta = Fraction(delta)
    per = tuple(level_bounds(spec, i, delta, precision) for i in range(1, len(spec.levels) + 1))
    lowers = [lb.lower for lb in per]
    uppers = [lb.upper for lb in per]
    suffixes = []
    for k in range(len(per)):
        lo = min(x.lo for x in lowers[k:])
        hi = min(x.hi for x in uppers[k:])
        suffixes.append(CertifiedReal(lo, max(lo, hi)))
    verdict = predicted_verdict(spec, delta)
    checks = [("lower<=upper", all(l.certainly_le(u) for l, u in zip(lowers, uppers)))]
    if verdict.kind == "ConvergesTo":
        c = verdict.target
        checks.append(("lower>0", all(l.certainly_gt(0) for l in lowers)))
        if spec.case.tag == "A":
            checks.append(("lower>c", all(l.certainly_gt(c) for l in lowers)))
        checks.append(("upper>=c", all(u.certainly_ge(c) for u in uppers)))
        checks.append(("upper-c non-increasing", _non_increasing(uppers)))
    elif verdict.kind == "DivergesToInfinity":
        checks.append(("lower>0", all(l.certainly_gt(0) for l in lowers)))
    else:
        checks.append(("upper non-increasing", _non_increasing(uppers)))
    consistent = all(ok for _, ok in checks)
    return NorthcottReport(spec, delta, per, suffixes[0], tuple(suffixes), verdict, consistent, tuple(checks))


# ---------------------------------------------------------------------------
# non-positive weights
# ---------------------------------------------------------------------------

DEFAULT_B = RadicalRational(5, 7, 5)


@dataclass(frozen=True)
class DemoRow:
    n: int
    a_n: RadicalRational
    h_gamma_a: CertifiedReal
    h_gamma_a_exact: str
    product: RadicalRational
    h_gamma_product: CertifiedReal
    chain_bound: CertifiedReal
    chain_holds: bool


def _h_gamma_a(n: int, gamma: Fraction, precision: int) -> CertifiedReal:
    # deg(a_n) = 3**n, h(a_n) = log 2 / 3**n, so h_gamma = log 2 * 3**(n (gamma - 1))
    wp = precision + 16
    return (log_interval(2, wp) * CertifiedReal.exact(3).rpow(n * (gamma - 1), wp)).round(precision + 4)


def demo_nonpositive(gamma, n_max: int, b: RadicalRational = DEFAULT_B,
                     precision: int = DEFAULT_PRECISION) -> list[DemoRow]:
    """Heights of ``a_n = 2**(1/3**n)`` and ``b * a_n`` for a weight gamma <= 0.

    Each row certifies h_gamma(b a_n) <= deg(b)**(-gamma) (h(b) deg(a_n)**gamma + h_gamma(a_n)).
    """
    gamma = Fraction(gamma)
    if gamma > 0:
        raise ValueError("the demonstration is for gamma <= 0")
    if b.is_one():
        raise ValueError("b must not be 1")
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    db = degree(b)
    rows = []
    for n in range(1, n_max + 1):
        a = RadicalRational(2, 1, 3 ** n)
        ha = _h_gamma_a(n, gamma, precision)
        prod = product_as_radical(b, a)
        exponent = n * (gamma - 1)
        exact = "log(2)" + ("" if exponent == 0 else f"*3^({exponent})")

        def chain(prec, n=n):
            w = prec + 16
            inner = height(b).certified(w) * CertifiedReal.exact(3 ** n).rpow(gamma, w) + _h_gamma_a(n, gamma, w)
            return inner * CertifiedReal.exact(db).rpow(-gamma, w)

        def lhs(prec, prod=prod):
            return weighted_height(prod, gamma, prec + 8).enclosure

        holds = less(lhs, chain, strict=False, start=precision)
        rows.append(DemoRow(n, a, ha, exact, prod, lhs(precision).round(precision + 4),
                            chain(precision).round(precision + 4), holds))
    return rows


def demo_decreasing(rows: list[DemoRow]) -> bool:
    """h_gamma(a_n) certified strictly decreasing along the table."""
    return all(b.h_gamma_a.certainly_lt(a.h_gamma_a) for a, b in zip(rows, rows[1:]))
