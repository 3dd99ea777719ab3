import pytest

from soficent.groups import SubgroupChain
from soficent.odometer import OdometerSystem, dyadic_odometer


def test_finite_depth_is_a_cycle():
    od = OdometerSystem(SubgroupChain((1, 2, 4)), 2)
    assert od.size == 4 and len(od.points()) == 4
    x = od.coset_sequence(0)
    orbit = [x]
    for _ in range(4):
        orbit.append(od.act(1, orbit[-1]))
    assert orbit[4] == x and len(set(orbit[:4])) == 4


def test_metric():
    od = dyadic_odometer(2)
    x = (0, 0, 0)
    assert od.rho(x, x) == 0.0
    assert od.rho(x, od.act(1, x)) == 0.5
    assert od.rho_interval(x, x).hi == od.tail == 0.125


def test_equicontinuous_and_not_expansive():
    od = dyadic_odometer(4)
    assert od.is_equicontinuous() and od.is_isometric()
    b = od.expansive_search()
    assert b.lo == 0.0 and b.hi == pytest.approx(2 ** -5)


def test_orbit_shift():
    sh = dyadic_odometer(3).as_shift()
    assert sh.k == 8 and "depth=3" in sh.name
    with pytest.raises(ValueError):
        OdometerSystem(SubgroupChain((1, 2)), 3)
