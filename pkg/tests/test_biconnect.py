from hypothesis import given, settings, strategies as st

from planarsep import articulation_count, biconnect, build_embedding, validate_embedding
from planarsep.generators import cut_chain, joined_grids, path_graph, star
from planarsep.oracles import brute_force_articulation_points


def two_triangles_shared_vertex():
    # triangles (0,1,2) and (2,3,4) share vertex 2
    rot = [
        [1, 2],
        [2, 0],
        [0, 1, 3, 4],
        [4, 2],
        [2, 3],
    ]
    return build_embedding(5, rot)


def test_biconnected_input_unchanged(grid4):
    out = biconnect(grid4)
    assert not out.virtual_edges
    assert out.rotation == grid4.rotation


def test_two_triangles_one_virtual_edge():
    g = two_triangles_shared_vertex()
    assert articulation_count(g) == 1
    out = biconnect(g)
    assert len(out.virtual_edges) == 1
    assert not brute_force_articulation_points(out)
    assert out.euler_residual() == 0


def test_star_leaves_joined():
    g = star(3)
    out = biconnect(g)
    assert not brute_force_articulation_points(out)
    assert out.euler_residual() == 0
    assert all(a != 0 and b != 0 for a, b, _ in out.virtual_edges)


def test_path_becomes_cycle():
    g = path_graph(3)
    out = biconnect(g)
    assert not brute_force_articulation_points(out)
    assert out.m == 3


def test_weights_preserved():
    g = path_graph(5)
    g.vertex_weight[2] = 9
    out = biconnect(g)
    assert out.vertex_weight == g.vertex_weight


def test_joined_grids():
    g, _ = joined_grids(3, 3)
    out = biconnect(g)
    assert not brute_force_articulation_points(out)
    assert out.euler_residual() == 0


def test_determinism():
    g, _ = joined_grids(3, 4)
    assert biconnect(g).rotation == biconnect(g).rotation


def test_oracle_agrees_with_block_count(grid4):
    g, _ = joined_grids(3, 3)
    assert len(brute_force_articulation_points(g)) == articulation_count(g) == 2
    assert articulation_count(grid4) == len(brute_force_articulation_points(grid4)) == 0


@settings(max_examples=25, deadline=None)
@given(
    blobs=st.integers(2, 5),
    size=st.integers(3, 12),
    seed=st.integers(0, 10**6),
)
def test_cut_chains_become_biconnected(blobs, size, seed):
    g = cut_chain(blobs, size, seed)
    assert brute_force_articulation_points(g)
    out = biconnect(g)
    assert not brute_force_articulation_points(out)
    assert out.euler_residual() == 0
    rep = validate_embedding(out)
    assert rep.connected and rep.euler_residual == 0
