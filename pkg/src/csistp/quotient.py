"""Cluster contraction with expansion bookkeeping.

Each cluster collapses to one quotient vertex; an edge touching a contracted
vertex costs the minimum over the merged endpoints, and rep remembers one
achieving original pair so quotient tree edges expand back exactly.
"""

from __future__ import annotations

import numpy as np

from .graph import MetricGraph


class QuotientGraph:
    """Contracted graph plus maps back to the original vertices.

    Quotient vertices 0..k-1 are the cluster images in input order; the
    remaining vertices are the original Steiner vertices in ascending order.
    origin[x] is ("cluster", i) or ("steiner", v); rep maps each normalized
    quotient edge to the original endpoint pair achieving its cost.
    """

    __slots__ = ("graph", "k", "origin", "rep")

    def __init__(self, graph: MetricGraph, k: int, origin: tuple, rep: dict):
        self.graph = graph
        self.k = k
        self.origin = origin
        self.rep = rep

    @property
    def terminal_images(self) -> tuple:
        return tuple(range(self.k))

    def expand_edge(self, e) -> tuple:
        """Original endpoint pair behind a quotient edge; exact same cost."""
        u, v = int(e[0]), int(e[1])
        key = (u, v) if u < v else (v, u)
        if key not in self.rep:
            raise ValueError(f"unknown quotient edge {e}")
        return self.rep[key]


def contract_clusters(g: MetricGraph, clusters) -> QuotientGraph:
    """Contract each cluster of g into a single vertex (min-cost rule).

    Cost ties pick the lexicographically smallest achieving original pair.
    The result is materialized directly; it need not satisfy the triangle
    inequality even when g does.
    """
    k = len(clusters)
    members = [sorted({int(v) for v in c}) for c in clusters]
    term = {v for m in members for v in m}
    if len(term) != sum(len(m) for m in members) or any(not m for m in members):
        raise ValueError("clusters must be disjoint and nonempty")
    steiner = [v for v in range(g.n) if v not in term]
    for m in members:
        if m[-1] >= g.n or m[0] < 0:
            raise ValueError("cluster vertex out of range")
    members += [[v] for v in steiner]
    q = len(members)
    cost = np.zeros((q, q), dtype=np.float64)
    rep = {}
    for x in range(q):
        mx = members[x]
        for y in range(x + 1, q):
            my = members[y]
            block = g.cost[np.ix_(mx, my)]
            flat = int(np.argmin(block))
            a, b = divmod(flat, len(my))
            cost[x, y] = cost[y, x] = block[a, b]
            rep[(x, y)] = (mx[a], my[b])
    origin = tuple(
        ("cluster", i) if i < k else ("steiner", steiner[i - k]) for i in range(q)
    )
    return QuotientGraph(MetricGraph(cost), k, origin, rep)


def expand_edge(q: QuotientGraph, e) -> tuple:
    """Original endpoint pair behind a quotient edge; exact same cost."""
    return q.expand_edge(e)
