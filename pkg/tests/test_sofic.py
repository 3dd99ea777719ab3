import numpy as np
import pytest

from soficent.groups import SubgroupChain
from soficent.sofic import (SoficMap, chain_map, compose, cyclic_map, finite_group_map, goodness,
                            is_permutation, perm_power, torus_map)


def test_cyclic_map_values(Z):
    assert np.array_equal(cyclic_map(1).sigma(1), [0])
    # 1-based: sigma_2(1) = 3 on five points
    assert int(cyclic_map(5).sigma(2)[0]) + 1 == 3
    assert np.array_equal(cyclic_map(5).sigma(0), np.arange(5))
    assert np.array_equal(cyclic_map(5).sigma(7), cyclic_map(5).sigma(2))


def test_torus_map(Z2):
    s = torus_map(2, 2)
    e1 = s.sigma((1, 0))
    assert all(e1[e1[i]] == i and e1[i] != i for i in range(4))
    assert np.array_equal(torus_map(2, 3).sigma((2, 3)), np.arange(6))
    degenerate = torus_map(3, 1).sigma((1, 0))
    assert np.array_equal(degenerate, cyclic_map(3).sigma(1))


def test_goodness_of_homomorphisms(Z, Z2):
    rep = goodness(cyclic_map(4), Z.ball(2))
    assert rep.min_mult == 1.0
    assert goodness(torus_map(4, 4), Z2.ball(1)).min_mult == 1.0
    assert goodness(torus_map(2, 2), Z2.ball(1)).min_mult == 1.0
    assert goodness(cyclic_map(7), Z.ball(2)).min_free == 1.0
    assert goodness(cyclic_map(2), Z.subset([(0,), (2,)])).free_fraction[((0,), (2,))] == 0.0


def test_json_round_trip_is_one_based(Z2):
    rng = np.random.default_rng(3)
    s = SoficMap.from_tables(Z2, {"e1": rng.permutation(5), "e2": rng.permutation(5)})
    text = s.to_json()
    assert '"d": 5' in text and min(min(v) for v in __import__("json").loads(text)["gens"].values()) == 1
    back = SoficMap.from_json(Z2, text)
    for g in [(1, 0), (0, 1), (2, -1)]:
        assert np.array_equal(back.sigma(g), s.sigma(g))


def test_rejects_non_permutations(Z):
    with pytest.raises(ValueError):
        SoficMap(Z, 3, {"1": [0, 0, 1]})
    with pytest.raises(ValueError):
        SoficMap(Z, 3, {"x": [0, 1, 2]})


def test_chain_and_finite_group_maps():
    c = chain_map(SubgroupChain.dyadic(3), 2)
    assert c.d == 4 and np.array_equal(c.sigma(1), [1, 2, 3, 0])
    f = finite_group_map(3, 2)
    assert f.d == 6 and np.array_equal(f.sigma(3), np.arange(6))


def test_perm_helpers():
    p = np.array([1, 2, 0])
    assert np.array_equal(perm_power(p, 3), np.arange(3))
    assert np.array_equal(perm_power(p, -1), [2, 0, 1])
    assert np.array_equal(compose(p, perm_power(p, -1)), np.arange(3))
    assert is_permutation(p) and not is_permutation(np.array([0, 0]))
