"""Prime-sequence towers: weight functions, constraint checks, greedy generation, classification.

A tower is ``L = K((p_i/q_i)**(1/d_i) : i >= 1)`` over the fixed base field
``K = Q(2**(1/3**j) : j >= 1)``.  The prime triples (d_i, p_i, q_i) must satisfy
a case-dependent system of inequalities; every inequality here is decided by
certified interval comparison, never by floating point.

Case summary (F(d) is the threshold exponent, p_i >= exp(F(d_i))):

====  =======================================  ==========================  =====
tag   f(x)                                     F(d)                        gamma
====  =======================================  ==========================  =====
A     x log x / (2(x-1)) + c x                 f(d)                        0
B1    1 / log x                                f(d) d**(1-gamma)           [0,1)
B2    c                                        f(d) d**(1-gamma)           (0,1)
B3    log x                                    f(d) d**(1-gamma)           (0,1)
C     none; d_i = p_i, p_i < q_i < 2p_i < p_{i+1}                          1
====  =======================================  ==========================  =====
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .exactnum import (DEFAULT_PRECISION, MAX_PRECISION, CertifiedReal, NoPrimeInRange, exp_interval,
                       is_prime, less, log_interval, next_prime_in)

CASES = ("A", "B1", "B2", "B3", "C")
BASE_FIELD = "Q(2^(1/3^j) : j >= 1)"
# (e_n, r_n) data of the base field generators r_n**(1/e_n): only the primes 2 and 3 occur
BASE_DATA = ((3, 2),)


class GenerationStuck(RuntimeError):
    pass


class ThresholdTooLarge(GenerationStuck):
    pass


@dataclass(frozen=True)
class WeightCase:
    tag: str
    c: Optional[Fraction] = None
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        tag = self.tag.upper()
        if tag not in CASES:
            raise ValueError(f"unknown case {self.tag!r}; expected one of {CASES}")
        c = None if self.c is None else Fraction(self.c)
        gamma = Fraction(self.gamma)
        if tag in ("A", "B2"):
            if c is None or c <= 0:
                raise ValueError(f"case {tag} needs a positive constant c")
        elif c is not None:
            raise ValueError(f"case {tag} takes no constant c")
        if tag == "A" and gamma != 0:
            raise ValueError("case A is the weight-0 construction (gamma = 0)")
        if tag == "B1" and not 0 <= gamma < 1:
            raise ValueError("case B1 needs gamma in [0, 1)")
        if tag in ("B2", "B3") and not 0 < gamma < 1:
            raise ValueError(f"case {tag} needs gamma in (0, 1)")
        if tag == "C":
            gamma = Fraction(1)
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "gamma", gamma)

    @property
    def uses_threshold(self) -> bool:
        return self.tag != "C"


@dataclass(frozen=True)
class Level:
    d: int
    p: int
    q: int


@dataclass(frozen=True)
class TowerSpec:
    case: WeightCase
    levels: tuple[Level, ...]
    base_field: str = BASE_FIELD
    base_data: tuple[tuple[int, int], ...] = BASE_DATA

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(Level(*lv) if not isinstance(lv, Level) else lv
                                                 for lv in self.levels))

    def level(self, i: int) -> Level:
        """1-based access, matching the indexing of the construction."""
        if not 1 <= i <= len(self.levels):
            raise IndexError(f"level {i} does not exist (have {len(self.levels)})")
        return self.levels[i - 1]

    # -- text format --------------------------------------------------------
    def to_text(self) -> str:
        lines = ["# tower-spec v1",
                 f"case: {self.case.tag}",
                 f"gamma: {self.case.gamma}",
                 f"c: {self.case.c if self.case.c is not None else 'none'}",
                 f"base_field: {self.base_field}",
                 "base_data: " + " ".join(f"{e}:{r}" for e, r in self.base_data),
                 "levels:",
                 "  i d p q"]
        for i, lv in enumerate(self.levels, 1):
            lines.append(f"  {i} {lv.d} {lv.p} {lv.q}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TowerSpec":
        fields, rows, in_levels = {}, [], False
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if in_levels:
                parts = line.split()
                if parts == ["i", "d", "p", "q"]:
                    continue
                if len(parts) != 4:
                    raise ValueError(f"malformed level row: {raw!r}")
                i, d, p, q = (int(x) for x in parts)
                if i != len(rows) + 1:
                    raise ValueError(f"level rows out of order at {raw!r}")
                rows.append(Level(d, p, q))
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise ValueError(f"malformed line: {raw!r}")
            key, value = key.strip(), value.strip()
            if key == "levels":
                in_levels = True
            else:
                fields[key] = value
        for key in ("case", "gamma", "c"):
            if key not in fields:
                raise ValueError(f"tower spec is missing '{key}'")
        c = None if fields["c"] == "none" else Fraction(fields["c"])
        case = WeightCase(fields["case"], c, Fraction(fields["gamma"]))
        base_data = BASE_DATA
        if fields.get("base_data"):
            base_data = tuple(tuple(int(v) for v in item.split(":")) for item in fields["base_data"].split())
        return cls(case, tuple(rows), fields.get("base_field", BASE_FIELD), base_data)


@dataclass(frozen=True)
class Constraint:
    name: str
    holds: bool
    required: bool = True
    detail: str = ""


@dataclass(frozen=True)
class ConstraintReport:
    level: int
    constraints: tuple[Constraint, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.holds for c in self.constraints if c.required)

    def failures(self) -> list[str]:
        return [c.name for c in self.constraints if c.required and not c.holds]

    def get(self, name: str) -> Constraint:
        for c in self.constraints:
            if c.name == name:
                return c
        raise KeyError(name)


# ---------------------------------------------------------------------------
# weight functions
# ---------------------------------------------------------------------------

def f_eval(case: WeightCase, d: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Certified enclosure of the weight function f(d)."""
    if d < 2:
        raise ValueError("weight functions are evaluated at d >= 2")
    wp = precision + 16
    if case.tag == "A":
        log_d = log_interval(d, wp)
        return (log_d.scale(Fraction(d, 2 * (d - 1)), wp) + CertifiedReal.enclose(case.c * d, wp)).round(precision + 4)
    if case.tag == "B1":
        return CertifiedReal.exact(1).div(log_interval(d, wp), wp).round(precision + 4)
    if case.tag == "B2":
        return CertifiedReal.enclose(case.c, precision + 4)
    if case.tag == "B3":
        return log_interval(d, precision + 4)
    raise ValueError("case C has no weight function")


def _power(d: int, gamma: Fraction, precision: int) -> CertifiedReal:
    return CertifiedReal.exact(d).rpow(gamma, precision)


def threshold_exponent(case: WeightCase, d: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """F(d): the primes of the level must satisfy exp(F(d)) <= p < q < 2p <= 4 exp(F(d))."""
    if case.tag == "A":
        return f_eval(case, d, precision)
    wp = precision + 16
    return (f_eval(case, d, wp) * _power(d, 1 - case.gamma, wp)).round(precision + 4)


def ramification_term(case: WeightCase, d: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``d**gamma * log(d) / (2(d-1))``, the quantity f(d) has to dominate."""
    wp = precision + 16
    term = log_interval(d, wp).scale(Fraction(1, 2 * (d - 1)), wp)
    if case.gamma:
        term = term * _power(d, case.gamma, wp)
    return term.round(precision + 4)


def _fn(fun, *args) -> Callable[[int], CertifiedReal]:
    return lambda prec: fun(*args, prec)


def _log_of(x) -> Callable[[int], CertifiedReal]:
    return lambda prec: log_interval(x, prec)


# ---------------------------------------------------------------------------
# constraint checking
# ---------------------------------------------------------------------------

def _gap_checks(case: WeightCase, prev: Level, cur: Level, cap: int) -> list[Constraint]:
    """Both readings of the inter-level gap condition.

    As printed for case A: max{d_{i-1}, 4 f(d_{i-1})} < exp(f(d_i)).
    Exponential form (case B as printed, "strengthened" for A):
    max{d_{i-1}, 4 exp(F_{i-1})} < exp(F_i).
    """
    F_cur = _fn(threshold_exponent, case, cur.d)
    F_prev = _fn(threshold_exponent, case, prev.d)
    d_ok = less(_log_of(prev.d), F_cur, cap=cap)
    strong = d_ok and less(lambda p: F_prev(p) + log_interval(4, p), F_cur, cap=cap)
    if case.tag != "A":
        return [Constraint("gap", strong, True, "max{d_(i-1), 4exp(F_(i-1))} < exp(F_i)")]
    printed = d_ok and less(lambda p: f_eval(case, prev.d, p) * 4, lambda p: exp_interval(F_cur(p), p), cap=cap)
    return [Constraint("gap_as_printed", printed, True, "max{d_(i-1), 4f(d_(i-1))} < exp(f(d_i))"),
            Constraint("gap_strengthened", strong, False, "max{d_(i-1), 4exp(f(d_(i-1)))} < exp(f(d_i))")]


def check_level_constraints(spec: TowerSpec, i: int, *, cap: int = MAX_PRECISION) -> ConstraintReport:
    """Evaluate every inequality attached to level ``i`` (1-based) with certified verdicts.

    Inter-level conditions (gap, monotonicity) are attached to the later of
    the two levels they relate.
    """
    case = spec.case
    lv = spec.level(i)
    d, p, q = lv.d, lv.p, lv.q
    out = [Constraint("d_prime", is_prime(d)), Constraint("p_prime", is_prime(p)), Constraint("q_prime", is_prime(q))]
    bad = {prime for e, r in spec.base_data for prime in _prime_divisors(e * r)}
    out.append(Constraint("coprime_to_base", p not in bad and q not in bad,
                          detail=f"p, q avoid the base-field primes {sorted(bad)}"))
    if i == 1:
        out.append(Constraint("min(d_1,p_1)>3", min(d, p) > 3))
    out.append(Constraint("p<q", p < q))
    out.append(Constraint("q<2p", q < 2 * p))
    if case.tag == "C":
        out.append(Constraint("d=p", d == p))
        if i > 1:
            prev = spec.level(i - 1)
            out.append(Constraint("2p_(i-1)<p_i", 2 * prev.p < p))
    else:
        F = _fn(threshold_exponent, case, d)
        if case.tag != "A":
            out.append(Constraint("positivity", less(_fn(ramification_term, case, d), _fn(f_eval, case, d), cap=cap),
                                  detail="d^gamma log(d)/(2(d-1)) < f(d)"))
        out.append(Constraint("p_above_threshold", less(F, _log_of(p), strict=False, cap=cap),
                              detail="exp(F(d)) <= p"))
        out.append(Constraint("window", less(_log_of(Fraction(p, 2)), F, strict=False, cap=cap),
                              detail="2p <= 4exp(F(d))"))
        if i > 1:
            out.extend(_gap_checks(case, spec.level(i - 1), lv, cap))
    if i > 1:
        prev = spec.level(i - 1)
        out.append(Constraint("d_increasing", prev.d < d))
        out.append(Constraint("p_increasing", prev.p < p))
        out.append(Constraint("q_increasing", prev.q < q))
    return ConstraintReport(i, tuple(out))


def check_tower(spec: TowerSpec, *, cap: int = MAX_PRECISION) -> list[ConstraintReport]:
    return [check_level_constraints(spec, i, cap=cap) for i in range(1, len(spec.levels) + 1)]


def _prime_divisors(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def _next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _admissible_d(case: WeightCase, d: int, prev: Optional[Level], cap: int) -> bool:
    if case.tag in ("B1", "B2", "B3"):
        if not less(_fn(ramification_term, case, d), _fn(f_eval, case, d), cap=cap):
            return False
    if prev is None:
        return True
    gaps = _gap_checks(case, prev, Level(d, 0, 0), cap)
    return all(g.holds for g in gaps if g.required)


def _pick_pq(lower, upper, p_floor: int, q_floor: int, cap: int) -> tuple[int, int]:
    """Smallest p in [lower, upper] above p_floor with a prime q in (max(p, q_floor), 2p)."""
    exceeding = p_floor
    while True:
        p = next_prime_in(lower, upper, exceeding, cap=cap)
        q = _next_prime(max(p, q_floor))
        if q < 2 * p:
            return p, q
        exceeding = p


def generate_tower(case: WeightCase, level_count: int, d1_hint: Optional[int] = None, *,
                   max_bits: int = 1024, cap: int = MAX_PRECISION, max_d_steps: int = 100000) -> TowerSpec:
    """Greedy smallest-prime construction of ``level_count`` levels.

    For each level: the smallest admissible prime d (positivity for case B,
    gap condition against the previous level), then the smallest prime p in
    [exp(F), 2exp(F)] above p_{i-1}, then the smallest prime q in (p, 2p) above
    q_{i-1}.  Refuses thresholds beyond ``2**max_bits``.
    """
    if level_count < 1:
        raise ValueError("need at least one level")
    levels: list[Level] = []
    start = max(5, d1_hint or 5)
    if case.tag == "C":
        p = start if is_prime(start) else _next_prime(start)
        for _ in range(level_count):
            if levels:
                p = _next_prime(2 * levels[-1].p)
            q_floor = levels[-1].q if levels else 0
            q = _next_prime(max(p, q_floor))
            if not q < 2 * p:
                raise GenerationStuck(f"no prime q in ({p}, {2 * p}) above {q_floor}")
            levels.append(Level(p, p, q))
        return TowerSpec(case, tuple(levels))

    d = start if is_prime(start) else _next_prime(start)
    log_limit = CertifiedReal.exact(max_bits) * log_interval(2, 64)
    for _ in range(level_count):
        prev = levels[-1] if levels else None
        if prev is not None:
            d = _next_prime(prev.d)
        for _step in range(max_d_steps):
            if _admissible_d(case, d, prev, cap):
                break
            d = _next_prime(d)
        else:
            raise GenerationStuck(f"no admissible d found after {max_d_steps} primes")
        F = _fn(threshold_exponent, case, d)
        if F(64).certainly_gt(log_limit):
            raise ThresholdTooLarge(f"threshold exp(F({d})) exceeds 2^{max_bits}")
        lower = lambda prec, F=F: exp_interval(F(prec), prec)
        upper = lambda prec, F=F: exp_interval(F(prec), prec) * 2
        try:
            p, q = _pick_pq(lower, upper, prev.p if prev else 3, prev.q if prev else 3, cap)
        except NoPrimeInRange as exc:
            raise GenerationStuck(f"window for d={d} exhausted") from exc
        levels.append(Level(d, p, q))
    return TowerSpec(case, tuple(levels))


# ---------------------------------------------------------------------------
# classification of I_B / I_N
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalDescriptor:
    """A right-unbounded interval ``(endpoint, oo)`` or ``[endpoint, oo)``; endpoint None is -oo."""

    endpoint: Optional[Fraction]
    closed: bool

    def contains_point(self, x) -> bool:
        if self.endpoint is None:
            return True
        x = Fraction(x)
        return x > self.endpoint or (self.closed and x == self.endpoint)

    def contains(self, other: "IntervalDescriptor") -> bool:
        if self.endpoint is None:
            return True
        if other.endpoint is None:
            return False
        if self.endpoint != other.endpoint:
            return self.endpoint < other.endpoint
        return self.closed or not other.closed

    @property
    def infimum(self):
        return -math.inf if self.endpoint is None else self.endpoint

    def __str__(self):
        if self.endpoint is None:
            return "(-inf, inf)"
        return f"{'[' if self.closed else '('}{self.endpoint}, inf)"


@dataclass(frozen=True)
class Classification:
    case: WeightCase
    conclusion: int
    I_B: IntervalDescriptor
    I_N: IntervalDescriptor
    nor: object  # Fraction, 0 or math.inf: Nor_gamma(L/K) at the endpoint gamma
    base_I_N: IntervalDescriptor = IntervalDescriptor(Fraction(1), False)
    base_fact_assumed: bool = True


def classify_intervals(case: WeightCase) -> Classification:
    """The (I_B, I_N, Nor) conclusion attached to each construction case.

    The base-field fact I_N(K) = (1, oo) rests on Amoroso's bound and is
    reported as an assumption, not recomputed.
    """
    g = case.gamma
    if case.tag in ("A", "B2"):
        return Classification(case, 2, IntervalDescriptor(g, True), IntervalDescriptor(g, False), case.c)
    if case.tag == "B1":
        return Classification(case, 1, IntervalDescriptor(g, False), IntervalDescriptor(g, False), Fraction(0))
    return Classification(case, 3, IntervalDescriptor(g, True), IntervalDescriptor(g, True), math.inf)
