"""Per-cluster constructions: dense Prim MST and Hamiltonian paths in the
cube of a tree.

The cube-path recursion splits the tree at one edge, solves both sides, and
joins them; consecutive path vertices stay within tree distance 3 and the
priced path costs at most twice the tree.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .graph import MetricGraph, Tree


@dataclass(frozen=True)
class LocalPath:
    """Hamiltonian path of one cluster with free-terminal endpoints."""

    cluster_index: int
    path: tuple
    endpoints: tuple
    cost: float


def prim_mst(g: MetricGraph, s) -> Tree:
    """Minimum spanning tree of the induced complete graph on s.

    Ties on the next vertex or its attachment edge go to the smallest index,
    so the returned tree is deterministic.
    """
    vs = sorted({int(v) for v in s})
    if not vs:
        raise ValueError("empty vertex subset")
    m = len(vs)
    if m == 1:
        return Tree((vs[0],), ())
    c = g.cost
    in_tree = [False] * m
    best = [math.inf] * m
    attach = [-1] * m
    best[0] = 0.0
    edges = []
    for _ in range(m):
        u = -1
        for w in range(m):
            if not in_tree[w] and (u < 0 or best[w] < best[u]):
                u = w
        in_tree[u] = True
        if attach[u] >= 0:
            edges.append((vs[attach[u]], vs[u]))
        cu = c[vs[u]]
        for w in range(m):
            if not in_tree[w] and cu[vs[w]] < best[w]:
                best[w] = cu[vs[w]]
                attach[w] = u
    return Tree(tuple(vs), tuple(edges))


def _component(adj, comp, start, banned):
    """Vertices reachable from start inside comp without crossing banned."""
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y in comp and y not in seen and (x, y) != banned and (y, x) != banned:
                seen.add(y)
                queue.append(y)
    return seen


def _tree_path(adj, comp, a, b):
    """Unique a -> b path inside comp (BFS parent chase)."""
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in adj[x]:
            if y in comp and y not in parent:
                parent[y] = x
                queue.append(y)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _ham(adj, comp, va, vb, stats):
    if stats is not None:
        stats["calls"] += 1
        stats["ops"] += len(comp)
    if len(comp) == 1:
        return [va]
    adjacent = vb in adj[va]
    if adjacent:
        cut = (va, vb)
    else:
        walk = _tree_path(adj, comp, va, vb)
        cut = (va, walk[1])
    comp_a = _component(adj, comp, va, cut)
    comp_b = comp - comp_a
    if len(comp_a) == 1:
        va2 = va
    else:
        va2 = min(y for y in adj[va] if y in comp_a)
    if adjacent:
        vb2 = vb if len(comp_b) == 1 else min(y for y in adj[vb] if y in comp_b)
    else:
        vb2 = cut[1]
    left = _ham(adj, comp_a, va, va2, stats)
    right = _ham(adj, comp_b, vb2, vb, stats)
    return left + right


def cube_ham_path(t: Tree, va: int, vb: int, stats: dict = None) -> tuple:
    """Hamiltonian path of t.vertices from va to vb in the cube of t.

    Every consecutive pair sits within tree distance 3. Pass a dict as stats
    to collect call and per-call work counters.
    """
    verts = set(t.vertices)
    if va not in verts or vb not in verts:
        raise ValueError("path endpoint not a tree vertex")
    if va == vb:
        if len(verts) > 1:
            raise ValueError("distinct endpoints required on a tree with 2+ vertices")
        return (va,)
    if stats is not None:
        stats.setdefault("calls", 0)
        stats.setdefault("ops", 0)
    adj = t.adjacency()
    return tuple(_ham(adj, verts, va, vb, stats))


def path_cost(g: MetricGraph, seq) -> float:
    return float(sum(g.cost[a, b] for a, b in zip(seq, seq[1:])))


def build_local_path(g: MetricGraph, inst, i: int, endpoint_rule: str = "lexicographic") -> LocalPath:
    """MST of the cluster, then a cube path between two free terminals.

    endpoint_rule "lexicographic" takes the two smallest free terminals;
    "cheapest-pair" takes the free pair with the cheapest direct edge.
    """
    cluster = inst.clusters[i]
    if len(cluster) == 1:
        v = cluster[0]
        return LocalPath(i, (v,), (v, v), 0.0)
    free = inst.free_endpoints(i)
    if len(free) < 2:
        raise ValueError(f"cluster {i} has fewer than 2 free endpoints")
    if endpoint_rule == "lexicographic":
        u, v = free[0], free[1]
    elif endpoint_rule == "cheapest-pair":
        u, v = min(
            ((a, b) for ai, a in enumerate(free) for b in free[ai + 1:]),
            key=lambda p: (g.cost[p[0], p[1]], p),
        )
    else:
        raise ValueError(f"unknown endpoint rule '{endpoint_rule}'")
    tree = prim_mst(g, cluster)
    seq = cube_ham_path(tree, u, v)
    return LocalPath(i, seq, (u, v), path_cost(g, seq))
