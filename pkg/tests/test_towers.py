import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from northcott_towers.exactnum import log_interval
from northcott_towers.towers import (IntervalDescriptor, Level, ThresholdTooLarge, TowerSpec, WeightCase,
                                     check_level_constraints, check_tower, classify_intervals, f_eval,
                                     generate_tower, ramification_term, threshold_exponent)

A05 = WeightCase("A", Fraction(1, 20))


def test_case_validation():
    with pytest.raises(ValueError):
        WeightCase("A")
    with pytest.raises(ValueError):
        WeightCase("A", Fraction(1), Fraction(1, 2))
    with pytest.raises(ValueError):
        WeightCase("B3", None, Fraction(1))
    with pytest.raises(ValueError):
        WeightCase("B1", Fraction(1))
    with pytest.raises(ValueError):
        WeightCase("D")
    assert WeightCase("c").gamma == 1


def test_f_eval_examples():
    # 5 log 5 / 8 + 1/4 and 1 / log 5, 40-digit mpmath
    assert abs(f_eval(A05, 5).mid - Fraction("1.255898695271312734125")) < Fraction(1, 10**17)
    assert f_eval(WeightCase("B3", None, Fraction(1, 2)), 5) == log_interval(5, 68)
    assert abs(f_eval(WeightCase("B1"), 5).mid - Fraction("0.6213349345596118107")) < Fraction(1, 10**17)
    with pytest.raises(ValueError):
        f_eval(WeightCase("C"), 5)


def test_case_a_level_floor_is_exactly_c():
    # F(d)/d - log(d)/(2(d-1)) cancels to c
    for d in (5, 11, 19, 101):
        floor = threshold_exponent(A05, d, 120).scale(Fraction(1, d), 130) - ramification_term(A05, d, 120)
        assert floor.contains(Fraction(1, 20))
        assert floor.width < Fraction(1, 10**30)


def test_level_constraints_pass():
    spec = TowerSpec(A05, (Level(5, 5, 7),))
    rep = check_level_constraints(spec, 1)
    assert rep.all_pass, rep.failures()


def test_level_constraints_fail():
    spec = TowerSpec(A05, (Level(5, 3, 7),))
    fails = check_level_constraints(spec, 1).failures()
    assert "p_above_threshold" in fails and "min(d_1,p_1)>3" in fails


def test_case_c_constraints():
    spec = TowerSpec(WeightCase("C"), (Level(5, 5, 7), Level(11, 11, 13)))
    assert all(r.all_pass for r in check_tower(spec))
    bad = TowerSpec(WeightCase("C"), (Level(5, 5, 7), Level(7, 7, 11)))
    assert "2p_(i-1)<p_i" in check_level_constraints(bad, 2).failures()


def test_generator_case_a():
    spec = generate_tower(A05, 3)
    assert [lv.d for lv in spec.levels] == [5, 11, 19]
    assert [lv.p for lv in spec.levels] == [5, 7, 13]
    assert [lv.q for lv in spec.levels] == [7, 11, 17]
    reports = check_tower(spec)
    assert all(r.all_pass for r in reports)
    # the exponential gap is reported but does not hold at this scale
    assert not reports[1].get("gap_strengthened").holds
    assert not reports[1].get("gap_strengthened").required


def test_generator_case_c():
    spec = generate_tower(WeightCase("C"), 3)
    assert [(lv.d, lv.p, lv.q) for lv in spec.levels] == [(5, 5, 7), (11, 11, 13), (23, 23, 29)]


def test_generator_case_b2():
    spec = generate_tower(WeightCase("B2", Fraction(3, 10), Fraction(1, 2)), 1)
    assert spec.levels == (Level(41, 7, 11),)
    # d = 37 just fails positivity: sqrt(37) log 37 / 72 = 0.3051 > 0.3
    assert ramification_term(spec.case, 37).certainly_gt(Fraction(3, 10))


@pytest.mark.parametrize("case", [
    WeightCase("A", Fraction(1, 20)), WeightCase("A", Fraction(2)),
    WeightCase("B1"), WeightCase("B1", None, Fraction(1, 2)),
    WeightCase("B2", Fraction(1, 2), Fraction(1, 3)), WeightCase("B2", Fraction(2), Fraction(1, 2)),
    WeightCase("B3", None, Fraction(1, 2)), WeightCase("C"),
])
def test_generated_towers_pass_checker(case):
    spec = generate_tower(case, 4)
    again = generate_tower(case, 4)
    assert spec == again
    assert all(r.all_pass for r in check_tower(spec))
    for a, b in zip(spec.levels, spec.levels[1:]):
        assert a.d < b.d and a.p < b.p and a.q < b.q


def test_threshold_limit():
    with pytest.raises(ThresholdTooLarge):
        generate_tower(WeightCase("A", Fraction(2)), 3, max_bits=16)
    assert len(generate_tower(WeightCase("A", Fraction(2)), 1, max_bits=16).levels) == 1


def test_threshold_exponent_case_b():
    case = WeightCase("B2", Fraction(3, 10), Fraction(1, 2))
    F = threshold_exponent(case, 41)
    assert abs(float(F.mid) - 0.3 * math.sqrt(41)) < 1e-12


def test_text_round_trip():
    spec = generate_tower(A05, 3)
    text = spec.to_text()
    assert TowerSpec.from_text(text) == spec
    assert TowerSpec.from_text(text).to_text() == text
    with pytest.raises(ValueError):
        TowerSpec.from_text("case: A\nlevels:\n  1 5 5\n")


@given(st.sampled_from(["A", "B1", "B2", "B3", "C"]), st.integers(0, 9))
@settings(max_examples=60, deadline=None)
def test_text_round_trip_any_case(tag, k):
    gamma = {"A": Fraction(0), "B1": Fraction(k, 10), "C": Fraction(1)}.get(tag, Fraction(k + 1, 11))
    c = Fraction(k + 1, 7) if tag in ("A", "B2") else None
    spec = TowerSpec(WeightCase(tag, c, gamma), (Level(5, 7, 11), Level(13, 17, 19)))
    assert TowerSpec.from_text(spec.to_text()) == spec


def test_classification_examples():
    cl = classify_intervals(WeightCase("A", Fraction(2)))
    assert str(cl.I_B) == "[0, inf)" and str(cl.I_N) == "(0, inf)" and cl.nor == 2
    cl = classify_intervals(WeightCase("B3", None, Fraction(1, 2)))
    assert cl.I_B == cl.I_N == IntervalDescriptor(Fraction(1, 2), True) and cl.nor == math.inf
    cl = classify_intervals(WeightCase("C"))
    assert cl.I_B == cl.I_N == IntervalDescriptor(Fraction(1), True)
    assert classify_intervals(WeightCase("B1")).nor == 0
    assert str(cl.base_I_N) == "(1, inf)" and cl.base_fact_assumed


def test_interval_descriptor():
    closed, open_ = IntervalDescriptor(Fraction(1), True), IntervalDescriptor(Fraction(1), False)
    assert closed.contains(open_) and not open_.contains(closed)
    assert closed.contains_point(1) and not open_.contains_point(1)
    assert IntervalDescriptor(None, False).contains(closed)
    assert closed.infimum == open_.infimum == 1
