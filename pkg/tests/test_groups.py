from fractions import Fraction

import pytest

from soficent.groups import CosetSpace, GroupModel, SubgroupChain, cyclic


def test_parse_and_names():
    assert GroupModel.parse("Z").name == "Z"
    assert GroupModel.parse("Z2").dim == 2
    assert GroupModel.parse("Z/7").modulus == 7
    with pytest.raises(ValueError):
        GroupModel.parse("Z3")


def test_balls(Z, Z2):
    assert Z.ball(0).elements == ((0,),)
    assert sorted(Z.ball(2).elements) == [(-2,), (-1,), (0,), (1,), (2,)]
    assert set(Z2.ball(1).elements) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}
    with pytest.raises(ValueError):
        Z.ball(-1)


def test_cyclic_ball_wraps(C6):
    assert len(C6.ball(3)) == 6
    assert C6.add((5,), (3,)) == (2,)
    assert C6.neg((1,)) == (5,)


def test_folner_defects(Z, Z2, C6):
    f = Z.folner(10)
    assert len(f.base) == 10 and f.defect["1"] == Fraction(2, 10)
    f2 = Z2.folner(4)
    assert len(f2.base) == 16 and all(v == Fraction(1, 2) for v in f2.defect.values())
    f6 = C6.folner(7)
    assert len(f6.base) == 6 and all(v == 0 for v in f6.defect.values())


def test_subset_algebra(Z):
    A = Z.subset([(0,), (1,)])
    B = A.translate((3,))
    assert B.elements == ((3,), (4,))
    assert A.union(B).issubset(Z.box(5))
    assert len(A.sumset(A)) == 3
    assert Z.box(4, anchor=(2,)).elements[0] == (2,)
    assert A.radius == 1


def test_coset_spaces():
    chain = SubgroupChain((1, 2, 4, 8))
    sp = chain.coset_space(2)
    assert sp.size == 4 and sp.permutation(1) == [1, 2, 3, 0]
    assert SubgroupChain((1, 2)).coset_space(0).permutation(1) == [0]
    three = SubgroupChain((1, 3, 9)).coset_space(1)
    assert three.permutation(3) == [0, 1, 2]
    with pytest.raises(ValueError):
        SubgroupChain((1, 3, 4))
    assert isinstance(sp, CosetSpace)
    assert cyclic(4).is_finite
