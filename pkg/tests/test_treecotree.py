import random

import pytest
from hypothesis import given, settings, strategies as st

from planarsep import (
    bfs_tree,
    cotree,
    dual_subtree_sums,
    fundamental_cut,
    fundamental_cycle,
    interior_faces,
    subtree_sums,
    tree_from_edges,
)
from planarsep.errors import (
    EdgeInTree,
    EdgeNotInCotree,
    NotSpanningTree,
    UnknownRoot,
)
from planarsep.generators import path_graph
from planarsep.oracles import enclosed_faces
from planarsep.treecotree import dot_export, tree_path


def test_bfs_depths_grid(grid4, grid4_tree):
    assert grid4_tree.depth[15] == 6  # Manhattan distance of (3,3)
    assert grid4_tree.depth[0] == 0


def test_bfs_triangle(c3):
    t = bfs_tree(c3, 0)
    assert t.depth == [0, 1, 1]


def test_bfs_on_tree_returns_the_tree():
    g = path_graph(6)
    t = bfs_tree(g, 2)
    assert t.edges == set(g.edges())


def test_bfs_unknown_root(c3):
    with pytest.raises(UnknownRoot):
        bfs_tree(c3, 7)


def test_cotree_sizes(grid4, grid4_tree, c3):
    pair = cotree(grid4, grid4_tree)
    assert len(pair.cotree_edges) == 24 - 15 == 9
    assert len(pair.dual.nodes) == 10
    tc3 = bfs_tree(c3, 0)
    assert len(cotree(c3, tc3).cotree_edges) == 1


def test_cotree_rejects_non_spanning(grid4, grid4_tree):
    edges = set(list(grid4_tree.edges)[:-1])
    with pytest.raises(NotSpanningTree):
        tree_from_edges(grid4, edges, 0)


def test_dual_root_is_max_face_id(grid4, grid4_tree):
    pair = cotree(grid4, grid4_tree)
    assert pair.dual_root == max(f.id for f in grid4.faces)
    assert pair.dual_parent[pair.dual_root] is None


def test_fundamental_cycle_triangle(c3):
    pair = cotree(c3, bfs_tree(c3, 0))
    e = next(iter(pair.cotree_edges))
    path, cyc = fundamental_cycle(pair, e)
    assert set(path) == {0, 1, 2}
    assert cyc == set(c3.edges())


def test_fundamental_cycle_grid_cell(grid4, grid4_tree):
    pair = cotree(grid4, grid4_tree)
    path, cyc = fundamental_cycle(pair, (5, 6, 0))
    assert len(path) == 4
    assert set(path) == {5, 1, 2, 6}


def test_cycle_endpoints_are_edge_endpoints(grid4, grid4_tree):
    pair = cotree(grid4, grid4_tree)
    for e in sorted(pair.cotree_edges):
        path, _ = fundamental_cycle(pair, e)
        assert {path[0], path[-1]} == {e[0], e[1]}


def test_cycle_of_tree_edge_rejected(grid4, grid4_tree):
    pair = cotree(grid4, grid4_tree)
    e = next(iter(grid4_tree.edges))
    with pytest.raises(EdgeInTree):
        fundamental_cycle(pair, e)


def test_cut_of_non_cotree_edge_rejected(grid4, grid4_tree):
    pair = cotree(grid4, grid4_tree)
    e = next(iter(grid4_tree.edges))
    with pytest.raises(EdgeNotInCotree):
        fundamental_cut(pair, e)


def test_duality_exhaustive(grid4, grid4_tree, tri60):
    for g in (grid4, tri60):
        t = bfs_tree(g, 0)
        pair = cotree(g, t)
        for e in sorted(pair.cotree_edges):
            _, cyc = fundamental_cycle(pair, e)
            assert cyc == fundamental_cut(pair, e)


def test_interior_faces_c3(c3):
    pair = cotree(c3, bfs_tree(c3, 0))
    e = next(iter(pair.cotree_edges))
    below = interior_faces(pair, e)
    assert below == {f.id for f in c3.faces} - {pair.dual_root}


def test_interior_faces_match_flood_fill_sides(grid4, tri60):
    # the subtree side of a cotree edge is one side of the cycle; it is
    # exactly the enclosed side whenever the infinite face sits above it
    for g in (grid4, tri60):
        pair = cotree(g, bfs_tree(g, 0))
        all_faces = {f.id for f in g.faces}
        for e in sorted(pair.cotree_edges):
            below = interior_faces(pair, e)
            _, cyc = fundamental_cycle(pair, e)
            enclosed = enclosed_faces(g, cyc)
            if g.infinite_face in below:
                assert below == all_faces - enclosed
            else:
                assert below == enclosed


def test_subtree_sums_path():
    children = {"a": ["b"], "b": ["c"], "c": []}
    sums = subtree_sums(children, "a", {"a": 1, "b": 1, "c": 1})
    assert sums == {"a": 3, "b": 2, "c": 1}


def test_subtree_sums_single():
    assert subtree_sums({}, "x", {"x": 7}) == {"x": 7}


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 60), seed=st.integers(0, 10**6))
def test_subtree_sums_vs_bruteforce(n, seed):
    rng = random.Random(seed)
    parent = {0: None}
    children = {i: [] for i in range(n)}
    for v in range(1, n):
        p = rng.randrange(v)
        parent[v] = p
        children[p].append(v)
    values = {v: rng.randint(0, 9) for v in range(n)}
    sums = subtree_sums(children, 0, values)

    def descendants(v):
        out = [v]
        for c in children[v]:
            out.extend(descendants(c))
        return out

    for v in range(n):
        assert sums[v] == sum(values[u] for u in descendants(v))


def test_dual_subtree_total(grid4, grid4_tree):
    pair = cotree(grid4, grid4_tree)
    values = {f.id: 1 for f in grid4.faces}
    sums = dual_subtree_sums(pair, values)
    assert sums[pair.dual_root] == grid4.f
    assert all(s <= sums[pair.dual_root] for s in sums.values())


def test_tree_path_endpoints(grid4, grid4_tree):
    p = tree_path(grid4_tree, 12, 3)
    assert p[0] == 12 and p[-1] == 3
    assert len(p) <= 2 * grid4_tree.height() + 1


def test_dot_export_mentions_kinds(grid4, grid4_tree):
    pair = cotree(grid4, grid4_tree)
    dot = dot_export(pair)
    assert 'kind="tree"' in dot and 'kind="cotree"' in dot and "graph" in dot
