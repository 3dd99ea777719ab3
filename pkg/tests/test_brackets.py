import math

import pytest

from soficent.brackets import (NEG_INF, POS_INF, Bracket, bmax, bmin, down, ext_add, ext_log,
                               ext_sum, fmt, up)


def test_log_zero_is_neg_inf():
    assert ext_log(0) == NEG_INF
    assert ext_log(1) == 0.0
    with pytest.raises(ValueError):
        ext_log(-1)


def test_neg_inf_absorbs_sums():
    assert ext_add(NEG_INF, POS_INF) == NEG_INF
    assert ext_add(3.0, NEG_INF) == NEG_INF
    assert ext_sum([1.0, 2.0, NEG_INF]) == NEG_INF
    assert ext_add(1.0, 2.0) == 3.0


def test_rounding_is_outward_and_keeps_zero():
    assert down(1.0) < 1.0 < up(1.0)
    assert down(0.0) == 0.0 == up(0.0)
    assert down(NEG_INF) == NEG_INF


def test_bracket_basics():
    b = Bracket(0.5, 0.7)
    assert b.contains(0.6) and not b.contains(0.8)
    assert math.isclose(b.width, 0.2) and math.isclose(b.mid, 0.6)
    assert b.overlaps(Bracket(0.7, 1.0)) and not b.overlaps(Bracket(0.71, 1.0))
    with pytest.raises(ValueError):
        Bracket(1.0, 0.0)
    with pytest.raises(ValueError):
        Bracket(float("nan"), 0.0)


def test_log_per_counts():
    assert Bracket(0, 0).log_per(4) == Bracket(NEG_INF, NEG_INF)
    b = Bracket(16, 16).log_per(4)
    assert b.lo <= math.log(2) <= b.hi
    assert Bracket(1, 1).log_per(3) == Bracket(0.0, 0.0)


def test_aggregates_and_empty_lists():
    ninf = Bracket(NEG_INF, NEG_INF)
    assert bmax([ninf, ninf]) == ninf
    assert bmax([ninf, Bracket(0.1, 0.2)]) == Bracket(0.1, 0.2)
    assert bmin([ninf, Bracket(0.1, 0.2)]).lo == NEG_INF
    assert bmax([]).hi == NEG_INF and bmin([]).lo == POS_INF


def test_fmt_twelve_digits_and_infinities():
    assert fmt(NEG_INF) == "-inf" and fmt(POS_INF) == "inf"
    assert fmt(math.log(2)) == 0.69314718056
    assert Bracket(NEG_INF, 1.0).to_json() == {"lo": "-inf", "hi": 1.0}
