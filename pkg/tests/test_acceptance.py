"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""
import random
import time
from fractions import Fraction

import mpmath
import pytest
from sympy import primerange

from northcott_towers.exactnum import ExactLog, exp_interval, log_interval
from northcott_towers.heights import RadicalRational, height, weighted_height
from northcott_towers.northcott import demo_decreasing, demo_nonpositive, divisibility_report, northcott_sandwich
from northcott_towers.oracle import Radical, Rational, cross_check_corollary, oracle_height, sample_expressions
from northcott_towers.polyalg import IntPolynomial, discriminant, log_mahler
from northcott_towers.towers import WeightCase, check_tower, classify_intervals, generate_tower

mpmath.mp.dps = 50


@pytest.fixture
def verdict(capsys):
    def report(tag: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[{tag}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return report


def _fr(x) -> Fraction:
    return Fraction(mpmath.nstr(x, 45, min_fixed=-50, max_fixed=50))


def test_ac1_exact_height_law(verdict):
    rng = random.Random(20240611)
    start = time.perf_counter()
    bad, widest = [], Fraction(0)
    for k in range(200):
        D = rng.randint(1, 50)
        if k % 4 == 0:
            # force some perfect powers so canonicalisation is exercised
            e = rng.choice([d for d in range(1, D + 1) if D % d == 0])
            m, n = rng.randint(1, int(10**(6 / e))) ** e, rng.randint(1, 10**6)
        else:
            m, n = rng.randint(1, 10**6), rng.randint(1, 10**6)
        r = RadicalRational(m, n, D)
        q = Fraction(m, n)
        exact_ok = height(r) == ExactLog(max(q.numerator, q.denominator), D)
        leaf = Radical(r) if r.root_deg > 1 else Rational(r.base)
        h = oracle_height(leaf)
        widest = max(widest, h.width)
        if not (exact_ok and h.overlaps(height(r).certified(96)) and h.width <= Fraction(1, 10**10)):
            bad.append((m, n, D))
    elapsed = time.perf_counter() - start
    verdict("AC1", not bad and elapsed < 120,
            f"200 radicals, {len(bad)} disagreements, max width {float(widest):.1e}, {elapsed:.1f}s")


def test_ac2_lower_bound_on_sampled_elements(verdict):
    start = time.perf_counter()
    samples = sample_expressions(5, 7, 5, 24)
    rep = cross_check_corollary(5, 5, samples)
    floor = Fraction("0.120708") - Fraction(1, 10**9)
    strict = all(row.height.certainly_gt(floor) for row in rep.rows)
    elapsed = time.perf_counter() - start
    lowest = min(row.height.lo for row in rep.rows)
    verdict("AC2", rep.all_hold and strict and len(rep.rows) >= 20 and elapsed < 60,
            f"{len(rep.rows)} elements of Q((5/7)^(1/5)), min height {float(lowest):.6f} > 0.120708, {elapsed:.1f}s")


def test_ac3_ramified_primes_divide_discriminant(verdict):
    primes = list(primerange(2, 50))
    failures, count = [], 0
    for d in (2, 3, 5, 7):
        for i, p in enumerate(primes):
            for q in primes[i + 1:]:
                count += 1
                r = divisibility_report(p, q, d)
                if r.discriminant % (p * q) ** (d - 1) or not r.holds:
                    failures.append((p, q, d))
    verdict("AC3", not failures, f"{count} triples (p, q, d), {len(failures)} failures")


def test_ac4_generator_case_a(verdict):
    start = time.perf_counter()
    c = Fraction(1, 20)
    spec = generate_tower(WeightCase("A", c), 3)
    triples = [(lv.d, lv.p, lv.q) for lv in spec.levels]
    ok = triples == [(5, 5, 7), (11, 7, 11), (19, 13, 17)]
    ok &= all(r.all_pass for r in check_tower(spec))
    rep = northcott_sandwich(spec, 0, 64)
    lowers = [lb.lower for lb in rep.per_level]
    uppers = [lb.upper for lb in rep.per_level]
    tol = Fraction(1, 10**6)
    ok &= all(iv.width <= tol for iv in lowers + uppers)
    ok &= all(lo.certainly_gt(c) for lo in lowers)
    ok &= all(b.certainly_lt(a) for a, b in zip(uppers, uppers[1:]))
    for lv, up in zip(spec.levels, uppers):
        envelope = log_interval(4, 80).scale(Fraction(1, lv.d), 90) + \
            log_interval(lv.d, 80).scale(Fraction(1, 2 * (lv.d - 1)), 90) + c
        ok &= up.certainly_le(envelope)
    for iv, ref in zip(lowers + uppers, ["0.1207", "0.0570", "0.0532", "0.3892", "0.2180", "0.1491"]):
        ok &= abs(iv.mid - Fraction(ref)) < Fraction(1, 10**4)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30
    verdict("AC4", ok, f"d,p,q = {triples}; lowers {[round(float(x), 4) for x in lowers]} > 0.05; "
                       f"uppers {[round(float(x), 4) for x in uppers]} decreasing; {elapsed:.1f}s")


def test_ac5_case_c_generator(verdict):
    spec = generate_tower(WeightCase("C"), 5)
    ok = len(spec.levels) == 5 and all(lv.d == lv.p for lv in spec.levels)
    ok &= all(r.all_pass for r in check_tower(spec))
    ok &= all(a.p < a.q < 2 * a.p < b.p for a, b in zip(spec.levels, spec.levels[1:]))
    rep = northcott_sandwich(spec, 1)
    uppers = [lb.upper for lb in rep.per_level]
    ok &= all(up.overlaps(log_interval(lv.q, 80)) for up, lv in zip(uppers, spec.levels))
    ok &= all(a.certainly_lt(b) for a, b in zip(uppers, uppers[1:]))
    verdict("AC5", ok, f"p = {[lv.p for lv in spec.levels]}, q = {[lv.q for lv in spec.levels]}, "
                       f"log q_i strictly increasing at delta = 1")


def test_ac6_classification_coherence(verdict):
    grid = [Fraction(k, 10) for k in range(10)]
    cases = [WeightCase("A", Fraction(k + 1, 20)) for k in range(5)]
    cases += [WeightCase("B1", None, g) for g in grid]
    cases += [WeightCase("B2", Fraction(3, 10), g) for g in grid if g > 0]
    cases += [WeightCase("B3", None, g) for g in grid if g > 0]
    cases += [WeightCase("C")]
    ok = True
    for case in cases:
        cl = classify_intervals(case)
        ok &= cl.I_B.contains(cl.I_N) and cl.I_B.infimum == cl.I_N.infimum == case.gamma
        if case.tag in ("A", "B2"):
            ok &= cl.nor == case.c and isinstance(cl.nor, Fraction)
    verdict("AC6", ok, f"{len(cases)} (case, gamma) pairs: I_N within I_B, equal infima, Nor = c for A and B2")


def test_ac7_mahler_accuracy(verdict):
    golden = log_mahler(IntPolynomial([-1, -1, 1]))
    seven = log_mahler(IntPolynomial([-5, 0, 0, 0, 0, 7]))
    ok = Fraction("0.4812118") - Fraction(1, 10**6) <= golden.lo and golden.hi <= Fraction("0.4812118") + Fraction(1, 10**6)
    ref = _fr(mpmath.log(7))
    ok &= ref - Fraction(1, 10**9) <= seven.lo and seven.hi <= ref + Fraction(1, 10**9)
    ok &= discriminant(IntPolynomial([-1, -1, 1])) == 5
    verdict("AC7", ok, f"log M(x^2-x-1) = {golden}, log M(7x^5-5) = {seven}")


def test_ac8_nonpositive_weights(verdict):
    gamma = Fraction(-1, 2)
    rows = demo_nonpositive(gamma, 6)
    ok = demo_decreasing(rows) and all(r.chain_holds for r in rows)
    for r in rows:
        ok &= r.h_gamma_a_exact == "log(2)*3^(" + str(Fraction(-3 * r.n, 2)) + ")"
        ref = _fr(mpmath.log(2) * mpmath.power(3, mpmath.mpf(-3 * r.n) / 2))
        ok &= r.h_gamma_a.contains(ref) or abs(r.h_gamma_a.mid - ref) < Fraction(1, 10**40)
        # second, independent route: deg^gamma * h through the heights module
        ok &= weighted_height(RadicalRational(2, 1, 3 ** r.n), gamma).enclosure.overlaps(r.h_gamma_a)
        if r.n >= 4:
            ok &= r.h_gamma_a.certainly_lt(Fraction(1, 1000))
    verdict("AC8", ok, "h_-1/2(2^(1/3^n)) = log2*3^(-3n/2), < 1e-3 from n = 4, strictly decreasing; "
                       "chain inequality certified for n = 1..6")


def test_ac9_log_exp_round_trips(verdict):
    rng = random.Random(99)
    violations = 0
    for k in range(10**4):
        if k % 2:
            x = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**7))
            if not exp_interval(x, 64).log(64).contains(x):
                violations += 1
        else:
            x = Fraction(rng.randint(1, 10**12), rng.randint(1, 10**6))
            if not exp_interval(log_interval(x, 64), 64).contains(x):
                violations += 1
    verdict("AC9", violations == 0, f"10^4 log/exp round trips, {violations} violations")
