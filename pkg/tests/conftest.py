import pytest

from planarsep import build_embedding, bfs_tree
from planarsep.generators import cycle_chords, grid, random_triangulation


@pytest.fixture
def c3():
    return build_embedding(3, [[1, 2], [2, 0], [0, 1]])


@pytest.fixture
def grid4():
    return grid(4, 4)


@pytest.fixture
def grid4_tree(grid4):
    return bfs_tree(grid4, 0)


@pytest.fixture
def c12():
    return cycle_chords(12, 0)


@pytest.fixture
def tri60():
    return random_triangulation(60, seed=2)


@pytest.fixture
def p3():
    return build_embedding(3, [[1], [0, 2], [1]])
