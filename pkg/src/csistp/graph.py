"""Dense metric graphs and trees.

Graphs are complete and stored as symmetric float64 cost matrices; vertices
are the integers 0..n-1. Trees are immutable edge lists over a vertex subset
with validation at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

#: absolute tolerance for every metric comparison in the package
EPS_METRIC = 1e-9


class MetricGraph:
    """Complete undirected graph with symmetric nonnegative float64 costs.

    The matrix is copied and frozen; symmetry, zero diagonal, finiteness and
    nonnegativity are enforced eagerly. The triangle inequality is not: pass
    check_metric=True to enforce it, or call is_metric on demand (quotient
    graphs legitimately violate it).
    """

    __slots__ = ("cost",)

    def __init__(self, cost, check_metric: bool = False):
        a = np.array(cost, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("cost matrix must be square")
        if a.shape[0] == 0:
            raise ValueError("graph needs at least one vertex")
        if not np.all(np.isfinite(a)):
            raise ValueError("costs must be finite")
        if np.any(a < 0):
            raise ValueError("costs must be nonnegative")
        if np.any(np.diag(a) != 0.0):
            raise ValueError("cost matrix diagonal must be zero")
        if not np.array_equal(a, a.T):
            raise ValueError("cost matrix not symmetric")
        a.setflags(write=False)
        self.cost = a
        if check_metric and not is_metric(self):
            raise ValueError("triangle inequality violated")

    @property
    def n(self) -> int:
        return self.cost.shape[0]

    def __eq__(self, other):
        return isinstance(other, MetricGraph) and np.array_equal(self.cost, other.cost)

    def __hash__(self):
        return hash((self.n, self.cost.tobytes()))

    def __repr__(self):
        return f"MetricGraph(n={self.n})"


@dataclass(frozen=True)
class Tree:
    """A tree over integer vertex labels.

    Edges are normalized to (min, max) and stored sorted, so two trees built
    from reordered edge lists compare equal. Construction validates the tree
    property: |E| = |V| - 1, no duplicates or self loops, acyclic (hence
    connected).
    """

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vs = tuple(sorted({int(v) for v in self.vertices}))
        es = tuple(
            sorted((min(int(u), int(v)), max(int(u), int(v))) for u, v in self.edges)
        )
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        if not vs:
            raise ValueError("tree needs at least one vertex")
        if len(es) != len(vs) - 1:
            raise ValueError(f"tree on {len(vs)} vertices needs {len(vs) - 1} edges, got {len(es)}")
        if len(set(es)) != len(es):
            raise ValueError("duplicate edge")
        vset = set(vs)
        parent = {v: v for v in vs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in es:
            if u == v:
                raise ValueError("self loop")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex set")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("edges contain a cycle")
            parent[ru] = rv

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)


def tree_cost(g: MetricGraph, t: Tree) -> float:
    """Total edge cost of a tree under g; edge order cannot matter because
    Tree stores edges canonically."""
    return float(sum(g.cost[u, v] for u, v in t.edges))


def is_metric(g: MetricGraph, eps: float = EPS_METRIC) -> bool:
    """Check the triangle inequality within an absolute tolerance."""
    c = g.cost
    for k in range(g.n):
        if np.any(c > c[:, [k]] + c[[k], :] + eps):
            return False
    return True


class PathTable:
    """Shortest-path reconstruction from a predecessor matrix."""

    __slots__ = ("pred",)

    def __init__(self, pred):
        self.pred = pred

    def path(self, u: int, v: int) -> list:
        """One shortest u -> v path as a vertex list (deterministic)."""
        if u == v:
            return [u]
        out = [v]
        while v != u:
            v = int(self.pred[u, v])
            out.append(v)
        out.reverse()
        return out


def metric_closure(g: MetricGraph):
    """Shortest-path closure of g plus a table recovering one path per pair.

    The closure satisfies the triangle inequality (within EPS_METRIC) and is
    idempotent; ties between equally short paths go to the smaller
    predecessor index.
    """
    dist, pred = kernels.floyd_warshall(np.ascontiguousarray(g.cost))
    return MetricGraph(dist), PathTable(pred)


def prune_leaves(vertices, edges, keep):
    """Drop leaves outside keep until none remain; returns sorted tuples.

    On a tree with keep nonempty this yields the minimal subtree spanning
    keep.
    """
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    vs = set(vertices)
    work = sorted(v for v in vs if len(adj[v]) <= 1 and v not in keep)
    while work:
        v = work.pop()
        if len(vs) == 1:
            break
        vs.discard(v)
        for u in adj[v]:
            adj[u].discard(v)
            if len(adj[u]) <= 1 and u not in keep:
                work.append(u)
        adj[v] = set()
    es = tuple(sorted((min(u, v), max(u, v)) for u, v in edges if u in vs and v in vs))
    return tuple(sorted(vs)), es


def induced_subgraph(g: MetricGraph, vertices):
    """Subgraph on a vertex subset plus the local -> original index map."""
    vs = sorted({int(v) for v in vertices})
    if not vs:
        raise ValueError("empty induced set")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise ValueError("vertex outside graph")
    sub = g.cost[np.ix_(vs, vs)]
    return MetricGraph(sub), tuple(vs)
