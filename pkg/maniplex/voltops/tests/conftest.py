import logging

import pytest

from maniplex.voltops.cosetenum import coxeter_flag_graph
from maniplex.voltops.premaniplex import Premaniplex

# (r0 r1 r2)^3, the Petrie relator identifying antipodal flags of the cube
HEMICUBE_RELATOR = [0, 1, 2, 0, 1, 2, 0, 1, 2]


@pytest.fixture(scope="session", autouse=True)
def test_init():
    logging.basicConfig(level=logging.DEBUG, format='%(message)s')
    logging.debug('Test Setup')


@pytest.fixture(scope="session")
def tetrahedron():
    return coxeter_flag_graph([3, 3])


@pytest.fixture(scope="session")
def cube():
    return coxeter_flag_graph([4, 3])


@pytest.fixture(scope="session")
def octahedron():
    return coxeter_flag_graph([3, 4])


@pytest.fixture(scope="session")
def twofour():
    """The map {2,4}: two square faces glued along their boundary"""
    return coxeter_flag_graph([2, 4])


@pytest.fixture(scope="session")
def hemicube():
    return coxeter_flag_graph([4, 3], [HEMICUBE_RELATOR])


@pytest.fixture(scope="session")
def corpus(tetrahedron, cube, octahedron, twofour):
    return {
        'tetrahedron': tetrahedron,
        'cube': cube,
        'octahedron': octahedron,
        'twofour': twofour,
        'triangle': Premaniplex.polygon(3),
        'square': Premaniplex.polygon(4),
    }
