"""Sequential reference engine for the fundamental-cycle separator.

Pipeline: bi-connect, transfer vertex weights to faces (minimum-id
policy), find a (1/4, 3/4)-balanced or (1/4, 3/4)-critical node in the
rooted dual tree, and mark the tree path whose closing edge realizes the
corresponding fundamental cut.

The critical case never materializes the virtual triangulation.  For a
critical face with boundary v_1..v_k (anchored at the dual-parent edge
(v_1, v_k)), the subtree weight of the t-th virtual triangle equals a
suffix of boundary choice-weights plus the hanging child subtrees:

    s_t = (w_F(f) - sum of choices of v_1..v_t) + (child subtrees at
          boundary edges t..k-1)

s is non-increasing in t, so the deepest triangle with s_t above the 3/4
threshold is a maximum, and its child triangle yields the virtual edge
(v_{j+1}, v_k).  The message-passing engine computes the same quantities
by ring passes and a binary search; all tie-breaks here are id-based so
both engines agree byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping, Optional, Sequence

from .biconnect import biconnect
from .embedding import Dart, EdgeId, EmbeddedPlanarGraph, FaceId
from .errors import DegenerateTotal, NotBiconnected, NotProper
from .treecotree import (
    SpanningTree,
    TreeCotreePair,
    cotree,
    dual_subtree_sums,
    tree_path,
    _tree_edge_between,
)
from .weights import FaceWeighting, check_proper, transfer_weights

ALPHA = Fraction(1, 4)
BETA = Fraction(3, 4)
PROPERNESS = Fraction(1, 12)


@dataclass(frozen=True)
class NodeVerdict:
    kind: str                 # "balanced" | "critical"
    face: FaceId
    subtree_weight: int
    depth: int
    total: int


def is_balanced(subtree: int, total: int) -> bool:
    return total <= 4 * subtree <= 3 * total


def exceeds_beta(subtree: int, total: int) -> bool:
    return 4 * subtree > 3 * total


def below_alpha(subtree: int, total: int) -> bool:
    return 4 * subtree < total


def find_balanced_or_critical_in_tree(
    children: Mapping[Hashable, Sequence[Hashable]],
    root: Hashable,
    values: Mapping[Hashable, int],
) -> tuple[str, Hashable, int, int]:
    """Generic rooted-tree detection; returns (kind, node, subtree, depth).

    Balanced pick: maximum node id among balanced nodes.  Critical pick:
    the deepest node whose subtree exceeds 3/4 of the total (unique,
    since two disjoint subtrees cannot both exceed 3/4), ties by id.
    """
    from .treecotree import subtree_sums

    sums = subtree_sums(children, root, values)
    total = sums[root]
    if total == 0:
        raise DegenerateTotal("total weight is zero")
    depth = {root: 0}
    stack = [root]
    while stack:
        x = stack.pop()
        for c in children.get(x, ()):
            depth[c] = depth[x] + 1
            stack.append(c)
    balanced = [x for x, s in sums.items() if is_balanced(s, total)]
    if balanced:
        pick = max(balanced)
        return "balanced", pick, sums[pick], depth[pick]
    heavy = [x for x, s in sums.items() if exceeds_beta(s, total)]
    pick = max(heavy, key=lambda x: (depth[x], x))
    for c in children.get(pick, ()):
        assert below_alpha(sums[c], total), "deepest heavy node has a heavy child"
    return "critical", pick, sums[pick], depth[pick]


def find_balanced_or_critical(pair: TreeCotreePair, face_weight: Mapping[FaceId, int]) -> NodeVerdict:
    kids = {f: [h for _, h in pair.dual_children[f]] for f in pair.dual_children}
    kind, face, subtree, depth = find_balanced_or_critical_in_tree(
        kids, pair.dual_root, face_weight
    )
    return NodeVerdict(
        kind=kind,
        face=face,
        subtree_weight=subtree,
        depth=depth,
        total=sum(face_weight.values()),
    )


@dataclass(frozen=True)
class ClosingEdge:
    kind: str                       # "real" | "virtual"
    endpoints: tuple[int, int]
    copy: int
    insert_before_u: Optional[Dart] = None   # rotation slot at endpoints[0]
    insert_before_v: Optional[Dart] = None   # rotation slot at endpoints[1]

    def edge(self) -> EdgeId:
        a, b = self.endpoints
        lo, hi = (a, b) if a < b else (b, a)
        return (lo, hi, self.copy)


@dataclass(frozen=True)
class SeparatorResult:
    case: str                       # "balanced" | "critical-virtual" | "critical-leaf"
    u: int
    v: int
    path: tuple[int, ...]
    closing: ClosingEdge
    interior_weight: int
    exterior_weight: int
    balance_ratio: Fraction
    diagnostics: dict = field(default_factory=dict, compare=False)


def serialize_separator(res: SeparatorResult) -> str:
    lines = [
        f"case {res.case}",
        f"u {res.u}",
        f"v {res.v}",
        "path " + str(len(res.path)) + " " + " ".join(map(str, res.path)),
    ]
    c = res.closing
    if c.kind == "real":
        a, b, cp = c.edge()
        lines.append(f"closing real {a} {b} {cp}")
    else:
        bu, bv = c.insert_before_u, c.insert_before_v
        lines.append(
            f"closing virtual {c.endpoints[0]} {c.endpoints[1]} {c.copy} "
            f"before-u {bu.tail} {bu.head} {bu.copy} "
            f"before-v {bv.tail} {bv.head} {bv.copy}"
        )
    lines.append(f"interior {res.interior_weight}")
    lines.append(f"exterior {res.exterior_weight}")
    lines.append(f"balance {res.balance_ratio.numerator}/{res.balance_ratio.denominator}")
    return "\n".join(lines) + "\n"


def sep_records(g: EmbeddedPlanarGraph, tree: SpanningTree, res: SeparatorResult) -> str:
    """Per-vertex view of the marked path, one canonical line per vertex."""
    path_edges = {
        _tree_edge_between(tree, x, y) for x, y in zip(res.path, res.path[1:])
    }
    on_path = set(res.path)
    lines = []
    for x in range(g.n):
        if x == res.u:
            role = "u"
        elif x == res.v:
            role = "v"
        elif x in on_path:
            role = "p"
        else:
            role = "-"
        darts = sorted(
            Dart(x, b if a == x else a, c)
            for (a, b, c) in path_edges
            if x in (a, b)
        )
        body = ",".join(f"{d.tail}-{d.head}-{d.copy}" for d in darts) or "-"
        lines.append(f"sep {x} {role} {body}")
    return "\n".join(lines) + "\n"


def _balance(interior: int, exterior: int, total: int) -> Fraction:
    return Fraction(max(interior, exterior), total)


def separator_from_balanced(
    pair: TreeCotreePair,
    verdict: NodeVerdict,
    weighting: FaceWeighting,
) -> SeparatorResult:
    assert verdict.kind == "balanced"
    f = verdict.face
    e = pair.dual_parent_edge[f]
    a, b, cp = e
    u, v = (a, b) if a < b else (b, a)
    path = tree_path(pair.tree, u, v)
    interior = verdict.subtree_weight
    exterior = verdict.total - interior
    return SeparatorResult(
        case="balanced",
        u=u,
        v=v,
        path=tuple(path),
        closing=ClosingEdge(kind="real", endpoints=(u, v), copy=cp),
        interior_weight=interior,
        exterior_weight=exterior,
        balance_ratio=_balance(interior, exterior, verdict.total),
    )


@dataclass(frozen=True)
class CriticalScan:
    """Boundary data of a critical face, anchored at its dual-parent edge."""

    face: FaceId
    anchor: Dart                      # the (v_k -> v_1) dart on f's boundary
    boundary: tuple[Dart, ...]        # (v_1->v_2), ..., (v_k->v_1)
    vs: tuple[int, ...]               # v_1..v_k
    choice: tuple[int, ...]           # choice[i] = weight v_{i+1} moved to f
    child_sub: tuple[int, ...]        # child subtree at boundary edge (v_i, v_{i+1})
    subtree_f: int

    @property
    def k(self) -> int:
        return len(self.vs)

    def triangle_weights(self) -> list[int]:
        """Redistributed weight of each virtual triangle f_1..f_{k-2}."""
        c = self.choice
        k = self.k
        if k == 3:
            return [c[0] + c[1] + c[2]]
        out = [c[0] + c[1]]
        out.extend(c[t] for t in range(2, k - 2))
        out.append(c[k - 2] + c[k - 1])
        return out

    def triangle_subtrees(self) -> list[int]:
        """s_t = subtree weight of virtual triangle f_t, for t = 1..k-2."""
        k = self.k
        wf = sum(self.choice)
        total_cs = sum(self.child_sub)
        pref_c = [0]
        for c in self.choice:
            pref_c.append(pref_c[-1] + c)
        pref_cs = [0]
        for cs in self.child_sub:
            pref_cs.append(pref_cs[-1] + cs)
        s = [self.subtree_f]
        for t in range(2, k - 1):
            s.append((wf - pref_c[t]) + (total_cs - pref_cs[t - 1]))
        return s


def critical_scan(
    pair: TreeCotreePair,
    verdict: NodeVerdict,
    weighting: FaceWeighting,
    weights: Sequence[int],
) -> CriticalScan:
    g = pair.graph
    f = verdict.face
    face = g.face(f)
    if f == pair.dual_root:
        anchor = f  # canonical dart doubles as the anchor when f has no parent
    else:
        e = pair.dual_parent_edge[f]
        da, db = g.darts_of_edge(e)
        anchor = da if g.face_of[da] == f else db
    idx = face.boundary.index(anchor)
    boundary = face.boundary[idx + 1 :] + face.boundary[: idx + 1]
    vs = tuple(d.tail for d in boundary)
    if len(set(vs)) != len(vs):
        raise NotBiconnected(f"face {f} boundary repeats a vertex")
    choice = tuple(
        weights[v] if weighting.chosen_face[v] == f else 0 for v in vs
    )
    child_sub = []
    sums = dual_subtree_sums(pair, weighting.face_weight)
    for d in boundary[:-1]:
        e = d.edge()
        other = g.face_of[d.reverse()]
        if e in pair.cotree_edges and pair.dual_parent_edge.get(other) == e:
            child_sub.append(sums[other])
        else:
            child_sub.append(0)
    return CriticalScan(
        face=f,
        anchor=anchor,
        boundary=boundary,
        vs=vs,
        choice=choice,
        child_sub=tuple(child_sub),
        subtree_f=sums[f],
    )


def separator_from_critical(
    pair: TreeCotreePair,
    verdict: NodeVerdict,
    weighting: FaceWeighting,
    weights: Sequence[int] | None = None,
) -> SeparatorResult:
    assert verdict.kind == "critical"
    g = pair.graph
    w = list(weights) if weights is not None else list(g.vertex_weight)
    W = verdict.total
    scan = critical_scan(pair, verdict, weighting, w)
    k = scan.k

    if not pair.dual_children[scan.face]:
        # leaf critical face: its boundary minus the anchor edge is a tree
        # path and the strict interior of the face is empty
        u, v = scan.vs[0], scan.vs[-1]
        path = tree_path(pair.tree, u, v)
        assert set(path) == set(scan.vs), "leaf face boundary is not the tree path"
        interior = verdict.subtree_weight
        # the strict interior of the face is empty, so only the exterior
        # side can form components; that is the guaranteed bound here
        return SeparatorResult(
            case="critical-leaf",
            u=u,
            v=v,
            path=tuple(path),
            closing=ClosingEdge(
                kind="real", endpoints=(u, v), copy=scan.anchor.copy
            ),
            interior_weight=interior,
            exterior_weight=W - interior,
            balance_ratio=Fraction(W - interior, W),
            diagnostics={"scan": scan},
        )

    s = scan.triangle_subtrees()
    tri_w = scan.triangle_weights()
    assert all(4 * tw <= W for tw in tri_w), "virtual triangle weight above W/4"
    j = max(t for t in range(1, k - 1) if exceeds_beta(s[t - 1], W))
    assert j <= k - 3, "no balanced triangle below the heavy prefix"
    s_next = s[j]  # subtree of f_{j+1}
    assert 4 * s_next > W and 4 * s_next <= 3 * W, "selected triangle not balanced"

    u, v = scan.vs[j], scan.vs[k - 1]
    path = tree_path(pair.tree, u, v)
    existing = {c for (a, b, c) in g.edges() if (a, b) == (min(u, v), max(u, v))}
    copy = max(existing, default=-1) + 1
    return SeparatorResult(
        case="critical-virtual",
        u=u,
        v=v,
        path=tuple(path),
        closing=ClosingEdge(
            kind="virtual",
            endpoints=(u, v),
            copy=copy,
            insert_before_u=scan.boundary[j],
            insert_before_v=scan.anchor,
        ),
        interior_weight=s_next,
        exterior_weight=W - s_next,
        balance_ratio=_balance(s_next, W - s_next, W),
        diagnostics={"scan": scan, "j": j, "s": s, "triangle_weights": tri_w},
    )


def compute_separator(
    g: EmbeddedPlanarGraph,
    tree: SpanningTree,
    weights: Sequence[int] | None = None,
) -> SeparatorResult:
    """Run the full pipeline on g (bi-connecting first) with tree T.

    The tree must span g; the result path lies in T, hence in g, and is a
    3/4-balanced separator of the original graph.
    """
    w = list(weights) if weights is not None else list(g.vertex_weight)
    verdict = check_proper(w, PROPERNESS)
    if verdict.degenerate:
        raise DegenerateTotal("total vertex weight is zero")
    if not verdict.proper:
        raise NotProper(
            f"max weight {verdict.max_weight} exceeds {PROPERNESS} of total {verdict.total}"
        )
    gp = biconnect(g)
    pair = cotree(gp, tree)
    weighting = transfer_weights(gp, policy="min", weights=w)
    node = find_balanced_or_critical(pair, weighting.face_weight)
    if node.kind == "balanced":
        return separator_from_balanced(pair, node, weighting)
    return separator_from_critical(pair, node, weighting, w)
