"""Embedding-free separator verification: remove P, weigh the pieces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .embedding import EmbeddedPlanarGraph


@dataclass(frozen=True)
class BalanceReport:
    total_weight: int
    component_weights: tuple[int, ...]
    max_ratio: Fraction
    passed: bool


def verify_separator(
    g: EmbeddedPlanarGraph,
    weights: Sequence[int] | None,
    separator: Iterable[int],
) -> BalanceReport:
    """Components of G minus the separator; pass iff 4*max <= 3*total."""
    w = list(weights) if weights is not None else list(g.vertex_weight)
    total = sum(w)
    removed = set(separator)
    seen = [False] * g.n
    comp_weights = []
    for s in range(g.n):
        if seen[s] or s in removed:
            continue
        seen[s] = True
        stack = [s]
        cw = 0
        while stack:
            v = stack.pop()
            cw += w[v]
            for u in g.neighbors(v):
                if not seen[u] and u not in removed:
                    seen[u] = True
                    stack.append(u)
        comp_weights.append(cw)
    if total == 0:
        ratio = Fraction(0)
    elif comp_weights:
        ratio = Fraction(max(comp_weights), total)
    else:
        ratio = Fraction(0)
    return BalanceReport(
        total_weight=total,
        component_weights=tuple(sorted(comp_weights, reverse=True)),
        max_ratio=ratio,
        passed=ratio * 4 <= 3,
    )
