"""Bi-connectivity augmentation with planarity-preserving virtual edges.

At each cut vertex v, consecutive darts in v's rotation that belong to
different blocks span a corner of some face; bridging that corner with an
edge between the two neighbors of v merges the blocks without leaving the
face.  A union-find over blocks skips corners whose blocks were already
merged earlier in the pass, so e.g. two triangles sharing a vertex get a
single virtual edge.  Passes repeat until no articulation point remains
(one pass suffices on all tested inputs; the loop is a guarantee, not a
hot path).
"""

from __future__ import annotations

from .embedding import Dart, EdgeId, EmbeddedPlanarGraph, build_embedding


def edge_blocks(g: EmbeddedPlanarGraph) -> dict[EdgeId, int]:
    """Assign each edge a biconnected-component index (iterative Tarjan)."""
    disc = [-1] * g.n
    low = [0] * g.n
    block_of: dict[EdgeId, int] = {}
    n_blocks = 0
    timer = 0

    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        estack: list[EdgeId] = []
        frames: list[list] = [[root, None, 0]]  # vertex, parent edge, rotation index
        while frames:
            frame = frames[-1]
            v, pe, i = frame
            if i < len(g.rotation[v]):
                frame[2] += 1
                d = g.rotation[v][i]
                u, e = d.head, d.edge()
                if e == pe:
                    continue
                if disc[u] == -1:
                    estack.append(e)
                    disc[u] = low[u] = timer
                    timer += 1
                    frames.append([u, e, 0])
                elif disc[u] < disc[v]:
                    estack.append(e)
                    low[v] = min(low[v], disc[u])
            else:
                frames.pop()
                if frames:
                    p = frames[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        blk = n_blocks
                        n_blocks += 1
                        while estack:
                            e = estack.pop()
                            block_of[e] = blk
                            if e == pe:
                                break
    return block_of


def articulation_count(g: EmbeddedPlanarGraph) -> int:
    """Number of cut vertices, from the block decomposition."""
    block_of = edge_blocks(g)
    blocks_at: list[set[int]] = [set() for _ in range(g.n)]
    for (a, b, _c), blk in block_of.items():
        blocks_at[a].add(blk)
        blocks_at[b].add(blk)
    return sum(1 for s in blocks_at if len(s) > 1)


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent.setdefault(x, x)
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        self.parent[x] = p
        return p

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _augment_once(g: EmbeddedPlanarGraph) -> EmbeddedPlanarGraph | None:
    """One corner pass; returns the augmented graph or None if no cut vertex."""
    block_of = edge_blocks(g)
    blocks_at: list[set[int]] = [set() for _ in range(g.n)]
    for (a, b, _c), blk in block_of.items():
        blocks_at[a].add(blk)
        blocks_at[b].add(blk)
    cut_vertices = [v for v in range(g.n) if len(blocks_at[v]) > 1]
    if not cut_vertices:
        return None

    uf = _UnionFind()
    rotation = [list(r) for r in g.rotation]
    virtual = set(g.virtual_edges)
    copies: dict[tuple[int, int], int] = {}
    for (a, b, c) in {d.edge() for row in rotation for d in row}:
        copies[(a, b)] = max(copies.get((a, b), -1), c)

    def next_copy(a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        copies[key] = copies.get(key, -1) + 1
        return copies[key]

    for v in cut_vertices:
        rot = list(rotation[v])  # may already hold bridges from earlier vertices
        k = len(rot)
        for i in range(k):
            d1, d2 = rot[i], rot[(i + 1) % k]
            b1, b2 = uf.find(block_of[d1.edge()]), uf.find(block_of[d2.edge()])
            if b1 == b2:
                continue
            h1, h2 = d1.head, d2.head
            if h1 == h2:
                # parallel edges to one neighbor are already 2-connected
                continue
            c = next_copy(h1, h2)
            d_h2h1 = Dart(h2, h1, c)
            d_h1h2 = Dart(h1, h2, c)
            # corner face runs (h1 -> v), (v -> h2); the bridge cuts it off:
            # at h2 the new dart follows (h2 -> v), at h1 it precedes (h1 -> v)
            rotation[h2].insert(rotation[h2].index(d2.reverse()) + 1, d_h2h1)
            rotation[h1].insert(rotation[h1].index(d1.reverse()), d_h1h2)
            virtual.add(d_h1h2.edge())
            uf.union(b1, b2)
            block_of[d_h1h2.edge()] = uf.find(b1)

    return build_embedding(
        g.n,
        rotation,
        g.vertex_weight,
        infinite_face_hint=None,
        virtual_edges=virtual,
    )


def biconnect(g: EmbeddedPlanarGraph) -> EmbeddedPlanarGraph:
    """Return g augmented with virtual edges until bi-connected.

    Planarity is preserved (every bridge lives inside one face corner),
    weights are unchanged, and already bi-connected graphs come back as-is.
    """
    current = g
    for _ in range(g.n + 1):
        augmented = _augment_once(current)
        if augmented is None:
            return current
        current = augmented
    raise AssertionError("augmentation failed to converge")
