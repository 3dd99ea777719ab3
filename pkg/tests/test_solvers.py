import itertools

import numpy as np

from soficent.independent import max_independent_set
from soficent.setcover import exact_set_cover, greedy_bracket, reduce_sets


def brute_cover(sets, universe):
    for r in range(len(sets) + 1):
        for combo in itertools.combinations(sets, r):
            acc = 0
            for s in combo:
                acc |= s
            if acc & universe == universe:
                return r


def brute_mis(adj):
    n = adj.shape[0]
    for r in range(n, -1, -1):
        for combo in itertools.combinations(range(n), r):
            if not any(adj[a, b] for a in combo for b in combo if a != b):
                return r


def test_exact_set_cover_matches_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(60):
        n = int(rng.integers(1, 9))
        universe = (1 << n) - 1
        sets = [int(rng.integers(1, 1 << n)) for _ in range(int(rng.integers(1, 7)))]
        sets += [1 << i for i in range(n)]
        res = exact_set_cover(sets, universe)
        assert res.exact and res.lo == res.hi == brute_cover(reduce_sets(sets, universe), universe)
        g = greedy_bracket(sets, universe)
        assert g.lo <= res.lo <= g.hi


def test_empty_universe_and_node_cap():
    assert exact_set_cover([1], 0).hi == 0
    sets = [(1 << i) | (1 << ((i + 1) % 14)) for i in range(14)] + [(1 << i) for i in range(14)]
    capped = exact_set_cover(sets, (1 << 14) - 1, node_cap=1)
    assert capped.lo <= 7 <= capped.hi


def test_mis_matches_brute_force():
    rng = np.random.default_rng(1)
    for _ in range(60):
        n = int(rng.integers(1, 10))
        adj = rng.random((n, n)) < 0.35
        adj = np.triu(adj, 1)
        adj = adj | adj.T
        res = max_independent_set(adj)
        assert res.exact and res.lo == res.hi == brute_mis(adj)


def test_mis_bracket_when_capped():
    n = 24
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        adj[i, (i + 1) % n] = adj[(i + 1) % n, i] = True
    res = max_independent_set(adj, node_cap=2)
    assert res.lo <= 12 <= res.hi
