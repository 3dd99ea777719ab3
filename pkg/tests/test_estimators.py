import math

import pytest

from soficent.brackets import NEG_INF
from soficent.covers import standard_partition, trivial_cover, window_partition
from soficent.estimators import (MicrostateTable, Schedule, bowen_measure_entropy, classify,
                                 expansive_constant, h_cover, h_cover_conditional, h_eps_conditional,
                                 h_measure_cover, h_space_conditional, h_star, h_topological,
                                 sandwich_holds)
from soficent.groups import cyclic
from soficent.measures import Bernoulli, single_site_indicators
from soficent.shifts import full_shift, periodic_orbit
from soficent.sofic import cyclic_map, finite_group_map

LOG2 = math.log(2)


def sched(sys, ds=(4, 8), deltas=(0.5,), eps=None, R=6, F=None):
    return Schedule(sigmas=[cyclic_map(d) for d in ds], F_list=[F or sys.group.ball(1)],
                    delta_list=deltas, eps_list=[eps or 0.99 * sys.w0], R=R)


def test_schedule_validation(Z, fs):
    with pytest.raises(ValueError):
        Schedule(sigmas=[cyclic_map(4)], F_list=[Z.ball(1)], delta_list=[0.25, 0.5],
                 eps_list=[0.3], R=6)
    with pytest.raises(ValueError):
        Schedule(sigmas=[cyclic_map(4)], F_list=[Z.ball(2), Z.ball(1)], delta_list=[0.5],
                 eps_list=[0.3], R=6)
    with pytest.raises(ValueError):
        sched(fs, eps=0.01, R=2).validate(fs)


def test_topological_values(fs, gm, fp):
    assert h_topological(fs, sched(fs, (4, 8, 12))).headline.contains(LOG2)
    g = h_topological(gm, sched(gm, (4, 8, 12))).headline
    # max over maps: the Lucas number L_4 = 7 on the 4-cycle wins
    assert g.lo == pytest.approx(math.log(7) / 4, abs=1e-9)
    assert h_topological(fp, sched(fp)).headline.hi == 0.0


def test_report_shape(fs):
    rep = h_topological(fs, sched(fs)).to_json()
    assert rep["headline"]["mode"] == "exact" and rep["headline"]["directionality"] == "bracket"
    assert {"d", "F_radius", "delta", "eps", "lo", "hi", "mode"} <= set(rep["cells"][0])


def test_cover_entropy(fs):
    s = sched(fs, (4, 8))
    t = MicrostateTable(fs, s)
    h = h_cover(fs, standard_partition(fs), s, t).headline
    assert h.contains(LOG2) and h.hi <= math.log(2) + 1e-12
    assert h_cover(fs, trivial_cover(fs), s, t).headline.hi == 0.0
    cond = h_cover_conditional(fs, standard_partition(fs), trivial_cover(fs), s, t).headline
    assert cond == h
    assert h_cover_conditional(fs, standard_partition(fs), standard_partition(fs), s, t).headline.hi == 0.0
    coarse = h_cover_conditional(fs, standard_partition(fs), window_partition(fs, 1), s, t).headline
    assert coarse.hi == 0.0


def test_space_conditional_and_tail(fs):
    s = sched(fs, (4, 8))
    t = MicrostateTable(fs, s)
    fam = [standard_partition(fs), window_partition(fs, 1), window_partition(fs, 2)]
    assert h_space_conditional(fs, standard_partition(fs), fam, s, t).headline.hi <= 0.1
    whole = h_space_conditional(fs, trivial_cover(fs), fam, s, t).headline
    assert whole.contains(LOG2)
    star = h_star(fs, fam, fam, s, t).headline
    assert star.hi <= h_topological(fs, s, t).headline.hi + 1e-12


def test_empty_microstates_give_neg_inf(Z):
    sys = periodic_orbit(2)
    s = sched(sys, (3, 5))
    rep = h_topological(sys, s)
    assert rep.headline.hi == NEG_INF and rep.neg_inf
    assert rep.to_json()["headline"]["hi"] == "-inf"
    assert h_star(sys, None, None, s).headline.hi == NEG_INF
    assert h_topological(sys, sched(sys, (3, 4))).headline.hi == pytest.approx(LOG2 / 4)


def test_measure_entropy(fs):
    s = sched(fs, (4, 8, 12), deltas=(0.25,))
    t = MicrostateTable(fs, s)
    L = [single_site_indicators(fs)]
    fair = h_measure_cover(fs, Bernoulli((0.5, 0.5)), standard_partition(fs), L, s, t).headline
    top = h_cover(fs, standard_partition(fs), s, t).headline
    assert abs(fair.mid - LOG2) <= 0.15 and fair.hi <= top.hi
    # a tolerance below 1/12 - 0.01 leaves only the all-zero labeling up to d = 12
    s = sched(fs, (4, 8, 12), deltas=(0.25, 0.05))
    biased = h_measure_cover(fs, Bernoulli((0.99, 0.01)), standard_partition(fs), L, s).headline
    assert biased.hi <= 0.2


def test_bowen_entropy_ceiling(Z, fs):
    s = Schedule(sigmas=[cyclic_map(d) for d in (4, 8)], F_list=[Z.ball(0)], delta_list=[0.5],
                 eps_list=[0.5], R=6)
    rep = bowen_measure_entropy(fs, Bernoulli((0.5, 0.5)), standard_partition(fs), s)
    assert rep.headline.hi == pytest.approx(LOG2) and rep.directionality == "certified-upper"


def test_separated_given_cover_and_sandwich(fs):
    s = sched(fs, (4, 8))
    t = MicrostateTable(fs, s)
    h = h_eps_conditional(fs, 0.99 * fs.w0, trivial_cover(fs), s, t).headline
    assert abs(h.mid - LOG2) <= 0.1
    assert h_eps_conditional(fs, 1.01, trivial_cover(fs), s, t).headline.hi == 0.0
    V = window_partition(fs, 2)
    res = sandwich_holds(fs, trivial_cover(fs), V, 0.3, V.lebesgue_lower(fs) * 0.9, s, t)
    assert res["holds"]
    with pytest.raises(ValueError):
        sandwich_holds(fs, trivial_cover(fs), standard_partition(fs), 0.3, 0.05, s, t)


def test_classification(fs, gm):
    ok, kappa = expansive_constant(fs)
    assert ok and kappa.lo == pytest.approx(fs.w0) and kappa.hi == pytest.approx(fs.w0)
    c = classify(fs, sched(fs, (4, 8)))
    assert c.expansive and c.h_expansive_evidence and c.asympt_h_expansive_evidence


def test_finite_system_is_expansive_with_zero_conditionals():
    G = cyclic(3)
    sys = full_shift(G, 2)
    s = Schedule(sigmas=[finite_group_map(3, c) for c in (1, 2)], F_list=[G.ball(1)],
                 delta_list=[0.5], eps_list=[0.99 * sys.w0], R=1)
    c = classify(sys, s)
    assert c.expansive and c.h_conditional.hi == 0.0 and c.h_star.hi == 0.0
