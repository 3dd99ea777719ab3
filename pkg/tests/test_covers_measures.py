import numpy as np
import pytest

from soficent.covers import (NotCovered, coarse_partitions, standard_partition, symbol_cover,
                             trivial_cover, window_partition)
from soficent.measures import Bernoulli, Markov, UnsupportedWindow, mu_cylinder, parry_measure, single_site_indicators


def test_partitions(Z, fs, gm):
    assert len(standard_partition(fs)) == 2 and len(standard_partition(gm)) == 2
    assert len(window_partition(gm, 1)) == 5
    assert len(trivial_cover(gm)) == 1 and trivial_cover(gm).is_trivial


def test_membership_and_uncovered(fs):
    open_cover = symbol_cover(fs, [[0, 1], [1]])
    assert open_cover.kind == "open"
    M = open_cover.membership(np.array([[0], [1]]))
    assert M.tolist() == [[True, False], [True, True]]
    with pytest.raises(NotCovered):
        symbol_cover(fs, [[0]])


def test_cell_index_and_geometry(Z, gm):
    W = window_partition(gm, 1)
    rows = gm.pattern_array(Z.ball(1))
    assert sorted(W.cell_index(rows).tolist()) == list(range(5))
    assert W.diam_upper(gm) == pytest.approx(gm.tail(1))
    assert W.lebesgue_lower(gm) == pytest.approx(float(gm.weight((1,))))
    assert len(coarse_partitions(gm)) == 2


def test_bernoulli_cylinders(Z):
    mu = Bernoulli((0.5, 0.5))
    assert mu.cylinder(Z.box(3), (0, 1, 1)) == pytest.approx(1 / 8)
    assert Bernoulli((0.25, 0.75)).cylinder(Z.box(2), (1, 1)) == pytest.approx(9 / 16)
    with pytest.raises(ValueError):
        Bernoulli((0.5, 0.6))


def test_parry_measure(Z, gm):
    mu = parry_measure(gm)
    assert mu_cylinder(mu, Z.box(2), (1, 1)) == 0.0
    total = sum(mu_cylinder(mu, Z.box(3), r) for r in gm.pattern_array(Z.box(3)))
    assert total == pytest.approx(1.0)
    gap = Z.subset([(0,), (2,)])
    assert sum(mu.cylinder(gap, (a, b)) for a in (0, 1) for b in (0, 1)) == pytest.approx(1.0)
    assert isinstance(mu, Markov)


def test_markov_rejects_lattice_windows(Z2):
    mu = Markov(np.array([[0.5, 0.5], [1.0, 0.0]]), np.array([2 / 3, 1 / 3]))
    with pytest.raises(UnsupportedWindow):
        mu.cylinder(Z2.box(2), (0, 0, 0, 0))


def test_indicators(fs):
    L = single_site_indicators(fs)
    assert [f.mean(Bernoulli((0.3, 0.7))) for f in L] == pytest.approx([0.3, 0.7])
