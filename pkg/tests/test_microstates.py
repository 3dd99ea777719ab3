import math
from math import comb

import numpy as np
import pytest

from soficent.covers import standard_partition, trivial_cover
from soficent.measures import Bernoulli, single_site_indicators
from soficent.microstates import (CapExceeded, MarginViolation, Microstate, bowen_ap_count,
                                  coupling_matrix, dump_lines, empirical_check,
                                  enumerate_microstates, membership, n_cover, n_separated,
                                  rho_d_interval)
from soficent.shifts import WindowTooSmall
from soficent.sofic import cyclic_map, torus_map


def test_homomorphic_maps_have_zero_defect(Z, fs):
    sigma = cyclic_map(5)
    rng = np.random.default_rng(0)
    for _ in range(10):
        om = Microstate(tuple(int(v) for v in rng.integers(0, 2, 5)), sigma)
        v = membership(om, fs, Z.subset([(1,)]), 0.05, 6)
        assert v.status == "IN" and v.interval.lo == 0.0


def test_large_delta_admits_everything_allowed(Z, gm):
    om = Microstate((0, 1, 0, 0), cyclic_map(4))
    assert membership(om, gm, Z.ball(1), 1.5, 4).status == "IN"


def test_forbidden_word_is_out(Z, gm):
    v = membership(Microstate((1, 1, 0, 0), cyclic_map(4)), gm, Z.ball(1), 0.1, 4)
    assert v.status == "OUT" and v.forbidden


def test_window_too_small(Z, fs):
    with pytest.raises(WindowTooSmall):
        membership(Microstate((0, 0), cyclic_map(2)), fs, Z.ball(1), 0.5, 9)


def test_enumeration_examples(Z, fs, gm):
    ms = enumerate_microstates(fs, cyclic_map(3), Z.subset([(1,)]), 0.5, 6)
    assert ms.certified_in.shape[0] == 8 and ms.unknown.shape[0] == 0
    golden = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    ms = enumerate_microstates(gm, cyclic_map(3), Z.subset([(1,)]), 0.1, 6)
    assert sorted(map(tuple, ms.certified_in.tolist())) == golden and ms.n_out == 4
    # delta below the truncation tail cannot certify anything
    ms = enumerate_microstates(gm, cyclic_map(3), Z.subset([(1,)]), 0.01, 6)
    assert ms.certified_in.shape[0] == 0 and sorted(map(tuple, ms.unknown.tolist())) == golden


def test_dfs_matches_brute_force(Z, gm):
    sigma = cyclic_map(10)
    brute = enumerate_microstates(gm, sigma, Z.ball(1), 0.5, 6)
    dfs = enumerate_microstates(gm, sigma, Z.ball(1), 0.5, 6, cap=16)
    assert dfs.method == "dfs" and brute.method == "brute"
    key = lambda a: sorted(map(tuple, a.tolist()))
    assert key(dfs.certified_in) == key(brute.certified_in)
    # Lucas number L_10 of golden-mean labelings of a 10-cycle
    assert brute.certified_in.shape[0] == 123


def test_dfs_cap(Z, fs):
    with pytest.raises(CapExceeded):
        enumerate_microstates(fs, cyclic_map(30), Z.ball(1), 0.5, 6, cap=16, node_cap=100)


def test_torus_has_unknowns_for_random_maps(Z2):
    from soficent.shifts import full_shift
    from soficent.sofic import SoficMap
    rng = np.random.default_rng(5)
    sigma = SoficMap.from_tables(Z2, {"e1": rng.permutation(6), "e2": rng.permutation(6)})
    ms = enumerate_microstates(full_shift(Z2, 2), sigma, Z2.ball(1), 0.6, 8)
    assert ms.n_out + ms.certified_in.shape[0] + ms.unknown.shape[0] == 2 ** 6
    assert enumerate_microstates(full_shift(Z2, 2), torus_map(2, 3), Z2.ball(1), 0.5, 8).certified_in.shape[0] == 64


def test_empirical_checks(fs):
    L = [single_site_indicators(fs)[1]]
    mu = Bernoulli((0.5, 0.5))
    sigma = cyclic_map(2)
    assert empirical_check(Microstate((1, 0), sigma), mu, L, 0.1)
    assert not empirical_check(Microstate((1, 1), sigma), mu, L, 0.5)
    assert empirical_check(Microstate((1, 1), sigma), mu, [], 0.01)


def test_pair_distances(fs):
    sigma = cyclic_map(4)
    a = Microstate((0, 0, 0, 0), sigma)
    b = Microstate((1, 1, 1, 1), sigma)
    c = Microstate((0, 1, 0, 0), sigma)
    same = rho_d_interval(a, a, fs, 6)
    assert same.lo == 0 and same.hi == pytest.approx(fs.tail(6))
    assert rho_d_interval(a, c, fs, 6).lo >= fs.w0
    total = sum(float(fs.weight((g,))) for g in range(-6, 7))
    assert rho_d_interval(a, b, fs, 6).lo == pytest.approx(total, rel=1e-9)
    assert coupling_matrix(fs, sigma, 6).sum(axis=1) == pytest.approx(np.full(4, total))


def test_separated_counts(Z, fs):
    sigma = cyclic_map(2)
    pts = [Microstate(w, sigma) for w in [(0, 0), (0, 1), (1, 0), (1, 1)]]
    r = n_separated(pts, fs, 0.4, 6)
    assert r.count.lo == r.count.hi == 4
    assert math.log(4) / 2 == pytest.approx(math.log(2))
    assert n_separated(pts[:1], fs, 0.4, 6).count.hi == 1
    assert n_separated([], fs, 0.4, 6).count.hi == 0
    with pytest.raises(MarginViolation):
        n_separated(pts, fs, 0.01, 6)


def test_cover_counts(fs):
    sigma = cyclic_map(3)
    pts = [Microstate(tuple((n >> j) & 1 for j in range(3)), sigma) for n in range(8)]
    assert n_cover(standard_partition(fs), pts).count.hi == 8
    assert n_cover(trivial_cover(fs), pts).count.hi == 1
    assert n_cover(trivial_cover(fs), []).count.hi == 0
    assert n_cover(standard_partition(fs), pts[:1]).count.lo == 1
    inside = n_cover(standard_partition(fs), pts, within=(standard_partition(fs), (0, 0, 1)))
    assert inside.count.hi == 1


def test_bowen_counts(Z, fs):
    mu = Bernoulli((0.5, 0.5))
    alpha = standard_partition(fs)
    r = bowen_ap_count(fs, cyclic_map(2), alpha, Z.ball(0), 0.1, mu)
    assert r.count.lo == r.count.hi == 2
    r = bowen_ap_count(fs, cyclic_map(2), alpha, Z.ball(0), 2.0, mu)
    assert r.count.lo == r.count.hi == 4
    d, eps = 10, 0.4
    r = bowen_ap_count(fs, cyclic_map(d), alpha, Z.ball(0), eps, mu)
    oracle = sum(comb(d, c) for c in range(d + 1) if 2 * abs(0.5 - c / d) <= eps)
    assert r.count.lo <= oracle <= r.count.hi


def test_bowen_sampling_is_seeded(Z, fs):
    mu = Bernoulli((0.5, 0.5))
    alpha = standard_partition(fs)
    args = (fs, cyclic_map(16), alpha, Z.ball(0), 0.25, mu)
    a = bowen_ap_count(*args, samples=2000, seed=7, force_sampling=True)
    b = bowen_ap_count(*args, samples=2000, seed=7, force_sampling=True)
    assert a == b and a.mode == "sampled"
    oracle = sum(comb(16, c) for c in range(17) if 2 * abs(0.5 - c / 16) <= 0.25)
    assert a.count.lo <= oracle <= a.count.hi


def test_dump_format(fs):
    assert dump_lines(fs, np.array([[0, 1, 1]])) == ["3 011"]
