import math
from fractions import Fraction

import numpy as np
import pytest

from soficent.shifts import (EmptySystem, ShiftSystem, forbid, full_shift, golden_mean,
                             periodic_orbit)
from soficent.transfer import (loop_count_lower_bound, spectral_radius_bracket, transfer_entropy_bracket,
                               transfer_graph, transfer_matrix_entropy)


def test_metric_normalization(Z, Z2, C6):
    for g in (Z, Z2, C6):
        sys = full_shift(g, 2)
        total = sum(sys.weight(e) for e in g.ball(sys.R_max).elements) + sys.tail_exact(sys.R_max)
        assert total == 1
    assert full_shift(Z, 2).w0 == pytest.approx(1 / 3)
    assert full_shift(Z2, 2).w0 == pytest.approx(1 / 9)
    assert full_shift(Z, 2).tail(6) == pytest.approx(2 / 3 * 2 ** -6)


def test_pattern_counts(Z, fs, gm):
    assert fs.pattern_array(Z.box(7)).shape[0] == 2 ** 7
    assert gm.pattern_array(Z.box(3)).shape[0] == 5
    assert gm.pattern_array(Z.ball(0)).shape[0] == 2
    counts = [gm.extendable_array(Z.box(n)).shape[0] for n in (1, 2, 3, 5)]
    assert counts == [2, 3, 5, 13]


def test_hard_squares(Z2):
    hs = golden_mean(Z2)
    assert hs.pattern_array(Z2.box(3)).shape[0] == 63
    arr, certified = hs.point_patterns(Z2.box(2))
    assert not certified and arr.shape[0] == 7


def test_point_patterns_drop_non_extendable(Z):
    # nothing may follow a 1, so "001" is locally allowed but lies in no point
    sys = ShiftSystem(Z, ("0", "1"), (forbid(Z, [0, 1], [1, 0]), forbid(Z, [0, 1], [1, 1])), name="dead-end")
    assert sys.pattern_array(Z.box(3)).tolist() == [[0, 0, 0], [0, 0, 1]]
    arr, certified = sys.point_patterns(Z.box(3))
    assert certified and arr.tolist() == [[0, 0, 0]]


def test_rho_interval(Z, fs):
    x = fs.pattern(Z.ball(2), [0, 0, 0, 0, 0])
    y = fs.pattern(Z.ball(2), [0, 0, 1, 0, 0])
    same = fs.rho_interval(x, x, 2)
    assert same.lo == 0 and same.hi == pytest.approx(fs.tail(2))
    assert fs.rho_interval(x, y, 2).lo == pytest.approx(fs.w0)
    a = fs.pattern(Z.ball(1), [0, 0, 0])
    b = fs.pattern(Z.ball(1), [1, 1, 1])
    w = float(fs.weight((0,)) + 2 * fs.weight((1,)))
    assert fs.rho_interval(a, b, 1).lo == pytest.approx(w)


def test_transfer_entropy_oracles(Z, fs, gm, fp):
    assert transfer_matrix_entropy(fs) == pytest.approx(math.log(2), abs=1e-12)
    assert transfer_matrix_entropy(full_shift(Z, 3)) == pytest.approx(math.log(3), abs=1e-12)
    assert abs(transfer_matrix_entropy(gm) - math.log((1 + 5 ** 0.5) / 2)) < 1e-8
    assert transfer_matrix_entropy(fp) == pytest.approx(0.0, abs=1e-12)
    b = transfer_entropy_bracket(gm)
    assert b.contains(math.log((1 + 5 ** 0.5) / 2))


def test_loop_bound_below_entropy(gm):
    for n in (5, 10, 20):
        assert loop_count_lower_bound(gm, n) <= transfer_matrix_entropy(gm)
    assert loop_count_lower_bound(periodic_orbit(4), 3) == float("-inf")
    assert loop_count_lower_bound(periodic_orbit(4), 8) == 0.0


def test_spectral_radius_bracket():
    A = np.array([[1, 1], [1, 0]])
    b = spectral_radius_bracket(A)
    assert b.contains((1 + 5 ** 0.5) / 2) and b.width < 1e-8
    assert transfer_graph(periodic_orbit(3)).n_states == 3


def test_validation(Z):
    with pytest.raises(EmptySystem):
        ShiftSystem(Z, ("0",), (forbid(Z, [0], [0]),))
    with pytest.raises(ValueError):
        ShiftSystem(Z, ("0", "1"), (forbid(Z, [0, 20], [1, 1]),), R_max=8)
    with pytest.raises(ValueError):
        ShiftSystem(Z, ("0", "0"))
    assert Fraction(1, 3) == full_shift(Z, 2).weight((0,))
