import numpy as np
import pytest

from maniplex.voltops import operators
from maniplex.voltops.coxword import CoxWord
from maniplex.voltops.premaniplex import Path, Premaniplex
from maniplex.voltops.symmetry import FlagPermutation, is_isomorphic
from maniplex.voltops.voltage import INCONCLUSIVE, NO, YES, VoltageOperator, compose, \
    identity, is_tree_trivial, normalize, preserves_connectivity, product, \
    validate_operator, voltage_of_path, zeta

MEDIAL_VOP = (
    'vop 1\n'
    'source-rank 3\n'
    'rank 3\n'
    'flags 2\n'
    'perm 0: 0 1\n'
    'perm 1: 0 1\n'
    'perm 2: 1 0\n'
    'volt 0: [1] [1]\n'
    'volt 1: [0] [2]\n'
    'volt 2: [] []\n'
)


def gauged_medial():
    """The medial with its voltages conjugated by [1] at the second flag"""
    y = Premaniplex([[0, 1], [0, 1], [1, 0]])
    return VoltageOperator(3, y, [[[1], [1]], [[0], [1, 2, 1]], [[1], [1]]])


def test_voltage_operator_inputs():
    y = Premaniplex.one_vertex(2)
    a = VoltageOperator(2, y, [[[1]], ['[0]']])
    b = VoltageOperator(2, y, [[CoxWord([1], 2)], [CoxWord([0], 2)]])
    assert a == b
    assert a.voltage(0, 1) == CoxWord([0], 2)
    assert a.base == 0
    assert a.rank == 2 and a.source_rank == 2 and a.flag_count == 1


@pytest.mark.parametrize(
    'source_rank, perms, voltages, match',
    [
        [3, [[0], [0], [0]], [[[0, 1]], [[1]], [[2]]], 'not an involution'],
        [1, [[1, 0]], [[[0], []]], 'is not inverted by'],
        [3, [[0], [0], [0]], [[[0]], [[1]], [[1]]], '4-path'],
        [3, [[0], [0], [0]], [[[0]], [[1]]], 'expected voltages for 3 colors'],
        [3, [[0], [0]], [[[0]], [[0], [1]]], 'expected 1 voltages'],
        [2, [[0]], [[[2]]], 'invalid generator index'],
        [2, [[0]], [[CoxWord([0], 3)]], 'rank mismatch'],
    ]
)
def test_voltage_operator_exception(source_rank, perms, voltages, match):
    with pytest.raises(ValueError, match=match):
        VoltageOperator(source_rank, Premaniplex(perms), voltages)


def test_validate_operator():
    assert validate_operator(operators.medial()) == []
    y = Premaniplex.one_vertex(3)
    op = VoltageOperator(3, y, [[[0]], [[1]], [[1]]], check=False)
    assert validate_operator(op) == ['colors 0,2 4-path at 0 has voltage [1,0,1,0]']


def test_vop_round_trip():
    assert operators.medial().to_vop() == MEDIAL_VOP
    assert VoltageOperator.from_vop(MEDIAL_VOP) == operators.medial()
    op = operators.omnitruncation()
    assert VoltageOperator.from_vop(op.to_vop()).to_vop() == op.to_vop()


@pytest.mark.parametrize(
    'text, match',
    [
        [MEDIAL_VOP.replace('vop 1', 'vop 9'), 'unsupported vop version'],
        [MEDIAL_VOP.replace('volt 1: [0] [2]', 'volt 1: [0]'), 'line 9'],
        [MEDIAL_VOP.replace('volt 1: [0] [2]', 'volt 1: [0] [2] x'), 'line 9'],
        [MEDIAL_VOP.replace('volt 1: [0] [2]', 'volt 1: [0] [3]'), 'line 9'],
        [MEDIAL_VOP + 'extra\n', 'line 11'],
        [MEDIAL_VOP.replace('volt 2: [] []', 'volt 2: [0] []'), 'invalid voltage operator'],
    ]
)
def test_vop_exception(text, match):
    with pytest.raises(ValueError, match=match):
        VoltageOperator.from_vop(text)


def test_voltage_of_path():
    op = operators.medial()
    assert voltage_of_path(op, Path(0, CoxWord([2, 0], 3))) == CoxWord([1], 3)
    assert voltage_of_path(op, Path(1, CoxWord([], 3))).is_identity()
    with pytest.raises(ValueError, match='invalid path base'):
        voltage_of_path(op, Path(2, CoxWord([0], 3)))
    with pytest.raises(TypeError):
        voltage_of_path(op, [0])


def test_zeta():
    op = operators.medial()
    assert zeta(op, CoxWord([0], 3)) == CoxWord([1], 3)
    assert zeta(op, CoxWord([2, 1, 2], 3)) == CoxWord([2], 3)
    with pytest.raises(ValueError, match='does not stabilize'):
        zeta(op, CoxWord([2], 3))


def test_product_identity(tetrahedron):
    assert product(tetrahedron, identity(3)) == tetrahedron


def test_product_dual(cube, octahedron):
    p = product(cube, operators.dual(3))
    assert p == Premaniplex(cube.perms[::-1])
    assert is_isomorphic(p, octahedron) is not None


def test_product_medial(tetrahedron, octahedron):
    p = product(tetrahedron, operators.medial())
    assert p.flag_count == 48
    assert is_isomorphic(p, octahedron) is not None


def test_product_rank_mismatch(cube):
    with pytest.raises(ValueError, match='rank mismatch'):
        product(cube, operators.prism(2))


def test_normalize():
    op = gauged_medial()
    assert not is_tree_trivial(op)
    assert is_tree_trivial(operators.medial())
    assert normalize(op) == operators.medial()


def test_normalize_flag_correspondence(cube):
    """(x, y) of the normalized product is (T(y) x, y) of the original"""
    op = gauged_medial()
    normal = normalize(op)
    ky = op.flag_count
    tree = [voltage_of_path(op, Path(0, op.premaniplex.tree_word(y))) for y in range(ky)]
    images = np.array([
        cube.apply_word(x, tree[y]) * ky + y
        for x in range(cube.flag_count) for y in range(ky)
    ])
    original = product(cube, op)
    FlagPermutation(images)
    assert (original.perms[:, images] == images[product(cube, normal).perms]).all()


def test_normalize_disconnected():
    y = Premaniplex.one_vertex(2).disjoint_union(Premaniplex.one_vertex(2))
    op = VoltageOperator(2, y, [[[0], [0]], [[1], [1]]])
    with pytest.raises(ValueError, match='not connected'):
        normalize(op)


@pytest.mark.parametrize('name', ['tetrahedron', 'cube', 'twofour'])
def test_compose(name, request):
    x = request.getfixturevalue(name)
    op = compose(operators.medial(), operators.truncation())
    assert op.flag_count == 6
    assert product(product(x, operators.medial()), operators.truncation()) == product(x, op)


def test_compose_rank_mismatch():
    with pytest.raises(ValueError, match='rank mismatch'):
        compose(operators.medial(), operators.prism(2))


@pytest.mark.parametrize(
    'op, verdict, index',
    [
        [operators.medial(), YES, 1],
        [operators.truncation(), YES, 1],
        [operators.omnitruncation(), YES, 1],
        [operators.dual(3), YES, 1],
        [operators.petrie(), YES, 1],
        [operators.prism(2), YES, 1],
        [operators.pyramid(2), YES, 1],
        [identity(3), YES, 1],
        [operators.double_cover(3), NO, 2],
        [operators.double_cover(2), NO, 2],
    ]
)
def test_preserves_connectivity(op, verdict, index):
    result = preserves_connectivity(op)
    assert result.verdict == verdict
    assert result.index == index
    assert bool(result) == (verdict == YES)


def test_preserves_connectivity_disconnected():
    y = Premaniplex.one_vertex(2).disjoint_union(Premaniplex.one_vertex(2))
    op = VoltageOperator(2, y, [[[0], [0]], [[1], [1]]])
    assert preserves_connectivity(op).verdict == NO


def test_preserves_connectivity_inconclusive():
    # ζ of the stabilizer is trivial, so C^2 / ζ(L) is infinite
    op = VoltageOperator(2, Premaniplex.one_vertex(2), [[[]], [[]]])
    assert preserves_connectivity(op, cap=100).verdict == INCONCLUSIVE
