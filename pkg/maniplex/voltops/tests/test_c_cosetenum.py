import pytest

from maniplex.voltops.coxword import CoxWord
from maniplex.voltops.cosetenum import CosetTable, InconclusiveError, Presentation, \
    coxeter_flag_graph, realize_schreier, string_commutators, todd_coxeter
from maniplex.voltops.premaniplex import Premaniplex
from maniplex.voltops.symmetry import covers, is_isomorphic

HEMICUBE_RELATOR = [0, 1, 2, 0, 1, 2, 0, 1, 2]


def test_string_commutators():
    assert string_commutators(4) == [(0, 2, 0, 2), (0, 3, 0, 3), (1, 3, 1, 3)]
    assert string_commutators(2) == []


def test_presentation_coxeter():
    presentation = Presentation.coxeter([4, 3])
    assert presentation.generator_count == 3
    assert presentation.relators == [(0, 1) * 4, (1, 2) * 3]
    assert presentation.all_relators[0] == (0, 2, 0, 2)


@pytest.mark.parametrize('schlafli', [[1, 3], [0]])
def test_presentation_coxeter_exception(schlafli):
    with pytest.raises(ValueError):
        Presentation.coxeter(schlafli)


def test_presentation_exception():
    with pytest.raises(ValueError):
        Presentation(0)
    with pytest.raises(ValueError):
        Presentation(2, [[0, 2]])


@pytest.mark.parametrize(
    'schlafli, expected',
    [
        [[3], 6],
        [[7], 14],
        [[3, 3], 24],
        [[4, 3], 48],
        [[3, 4], 48],
        [[2, 4], 16],
        [[5, 3], 120],
        [[3, 3, 3], 120],
    ]
)
def test_todd_coxeter_order(schlafli, expected):
    presentation = Presentation.coxeter(schlafli)
    table = todd_coxeter(presentation)
    assert table.is_complete
    assert table.size == expected
    assert table.check(presentation) == []


@pytest.mark.parametrize(
    'subgroup_gens, expected',
    [
        [[[0]], 24],
        [[[0], [1]], 6],
        [[[1], [2]], 8],
        [[[0], [2]], 12],
        [[[0], [1], [2]], 1],
    ]
)
def test_todd_coxeter_subgroup(subgroup_gens, expected):
    presentation = Presentation.coxeter([4, 3])
    table = todd_coxeter(presentation, subgroup_gens)
    assert table.size == expected
    assert table.check(presentation, subgroup_gens) == []
    for word in subgroup_gens:
        assert table.trace(0, word) == 0


def test_todd_coxeter_capped():
    table = todd_coxeter(Presentation.coxeter([3, 3]), cap=10)
    assert table.status == CosetTable.CAPPED
    assert not table.is_complete
    with pytest.raises(InconclusiveError):
        table.to_premaniplex()


def test_todd_coxeter_exception():
    with pytest.raises(ValueError, match='cap must be positive'):
        todd_coxeter(Presentation(2), cap=0)
    with pytest.raises(ValueError):
        todd_coxeter(Presentation(2), [[2]])


def test_coxeter_flag_graph(cube):
    assert cube.rank == 3
    assert cube.flag_count == 48
    assert cube.is_maniplex()[0]


def test_coxeter_flag_graph_hemicube(hemicube, cube):
    assert hemicube.flag_count == 24
    assert hemicube.is_maniplex()[0]
    other = coxeter_flag_graph([4, 3], [CoxWord(HEMICUBE_RELATOR, 3)])
    assert is_isomorphic(other, hemicube) is not None
    assert covers(cube, other)[0]


def test_coxeter_flag_graph_capped():
    with pytest.raises(InconclusiveError) as e:
        coxeter_flag_graph([3, 6], cap=500)
    assert e.value.cap == 500
    assert e.value.cosets is not None


def test_realize_schreier_infinite():
    with pytest.raises(InconclusiveError):
        realize_schreier(3, [], cap=1000)


def test_realize_schreier_two_flag():
    gens = [CoxWord([0], 3), CoxWord([1], 3), CoxWord([2, 1, 2], 3)]
    p = realize_schreier(3, gens)
    assert p == Premaniplex.two_flag(3, {0, 1})


def test_realize_schreier_rank_mismatch():
    with pytest.raises(ValueError, match='rank mismatch'):
        realize_schreier(3, [CoxWord([0], 2)])


def test_schreier_round_trip(corpus, hemicube):
    """The coset graph of the stabilizer of flag 0 is the premaniplex itself"""
    premaniplexes = list(corpus.values()) + [
        hemicube,
        Premaniplex.one_vertex(3),
        Premaniplex.two_flag(3, {0, 1}),
        Premaniplex.two_flag(3, {1}),
        Premaniplex.polygon(5),
    ]
    for p in premaniplexes:
        gens = p.schreier_generators(0).generators
        assert is_isomorphic(realize_schreier(p.rank, gens), p) is not None


@pytest.mark.parametrize(
    'subgroup_gens, expected',
    [
        [[[1, 2, 2, 1]], 48],
        [[[1, 2, 2, 1], [1, 0]], 12],
        [[[0, 1, 1]], 24],
        [[[2, 0, 2]], 24],
        [[[1, 0, 0, 1], [2, 1, 1, 2], [0]], 24],
    ]
)
def test_todd_coxeter_unreduced_subgroup_words(subgroup_gens, expected):
    presentation = Presentation.coxeter([4, 3])
    table = todd_coxeter(presentation, subgroup_gens)
    assert table.is_complete
    assert table.size == expected
    assert table.check(presentation, subgroup_gens) == []


def _sympy_index(presentation, subgroup_gens):
    """Index of the subgroup computed with sympy's coset enumeration"""
    fp_groups = pytest.importorskip('sympy.combinatorics.fp_groups')
    free_groups = pytest.importorskip('sympy.combinatorics.free_groups')
    count = presentation.generator_count
    free, *gens = free_groups.free_group(', '.join(f'r{i}' for i in range(count)))

    def element(word):
        result = free.identity
        for x in word:
            result = result * gens[x]
        return result

    relators = [g ** 2 for g in gens] + [element(r) for r in presentation.all_relators]
    group = fp_groups.FpGroup(free, relators)
    table = group.coset_enumeration([element(w) for w in subgroup_gens], max_cosets=100000)
    return len([c for c, p in enumerate(table.p) if p == c])


@pytest.mark.parametrize(
    'schlafli, subgroup_gens',
    [
        [[4, 3], []],
        [[4, 3], [[1, 2, 2, 1], [1, 0]]],
        [[4, 3], [[0, 1, 0, 1]]],
        [[4, 3], [[2, 1, 0, 1, 2]]],
        [[3, 3], [[0, 1, 2]]],
        [[3, 3], [[1, 2, 1, 0, 1, 2, 1]]],
        [[5, 3], [[0, 1], [2, 1, 2]]],
        [[3, 5], [[0, 1, 2, 1, 0]]],
        [[2, 4], [[0, 1, 2, 1, 0], [2]]],
        [[3, 3, 3], [[3, 2, 1, 0], [0, 1]]],
    ]
)
def test_todd_coxeter_index_matches_sympy(schlafli, subgroup_gens):
    presentation = Presentation.coxeter(schlafli)
    table = todd_coxeter(presentation, subgroup_gens)
    assert table.is_complete
    assert table.size == _sympy_index(presentation, subgroup_gens)
