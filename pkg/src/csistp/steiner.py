"""Steiner tree subroutines: the KMB 2-approximation and an exact subset
dynamic program for small terminal counts.

Both return trees with every leaf a terminal; either can be plugged into the
clustered solver, which only relies on the advertised ratio.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import MetricGraph, Tree, metric_closure, prune_leaves, tree_cost
from .local_trees import prim_mst

DW_MAX_TERMINALS = 12


@dataclass(frozen=True)
class SteinerSolver:
    """Named Steiner subroutine with its guaranteed approximation factor."""

    name: str
    ratio: float
    fn: object

    def solve(self, g: MetricGraph, terminals) -> Tree:
        return self.fn(g, terminals)


def _kruskal(g: MetricGraph, vertices, pool) -> tuple:
    """MST edges of the subgraph (vertices, pool); ties by (cost, u, v)."""
    order = sorted(pool, key=lambda e: (g.cost[e[0], e[1]], e))
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            out.append((u, v))
    if len(out) != len(vertices) - 1:
        raise ValueError("edge pool does not connect the vertex set")
    return tuple(out)


def _check_terms(g, terminals):
    terms = sorted({int(v) for v in terminals})
    if not terms:
        raise ValueError("terminal set is empty")
    if terms[0] < 0 or terms[-1] >= g.n:
        raise ValueError("terminal outside graph")
    return terms


def kmb_steiner(g: MetricGraph, terminals) -> Tree:
    """Kou-Markowsky-Berman 2-approximation.

    MST of the metric closure on the terminals, expanded through shortest
    paths, re-MST'd over the union of path edges, pruned of non-terminal
    leaves. Cost is at most twice the optimal Steiner tree.
    """
    terms = _check_terms(g, terminals)
    if len(terms) == 1:
        return Tree((terms[0],), ())
    closure, table = metric_closure(g)
    backbone = prim_mst(closure, terms)
    verts = set(terms)
    pool = set()
    for u, v in backbone.edges:
        walk = table.path(u, v)
        verts.update(walk)
        pool.update((min(a, b), max(a, b)) for a, b in zip(walk, walk[1:]))
    es = _kruskal(g, sorted(verts), sorted(pool))
    vs, es = prune_leaves(sorted(verts), es, set(terms))
    return Tree(vs, es)


def _dw_edges(choice_u, choice_split, mask, v, out):
    """Recover the closure edges of the DP tree for state (mask, v)."""
    u = int(choice_u[mask, v])
    if u != v:
        out.append((u, v))
    if mask & (mask - 1) == 0:
        return
    sub = int(choice_split[mask, u])
    _dw_edges(choice_u, choice_split, sub, u, out)
    _dw_edges(choice_u, choice_split, mask ^ sub, u, out)


def dreyfus_wagner(g: MetricGraph, terminals) -> Tree:
    """Exact minimum Steiner tree by subset dynamic programming.

    Exponential in the terminal count; refuses more than DW_MAX_TERMINALS
    terminals.
    """
    terms = _check_terms(g, terminals)
    if len(terms) > DW_MAX_TERMINALS:
        raise ValueError("exact solver limit exceeded")
    if len(terms) == 1:
        return Tree((terms[0],), ())
    closure, table = metric_closure(g)
    dist = np.ascontiguousarray(closure.cost)
    tarr = np.array(terms, dtype=np.int64)
    dp, choice_u, choice_split = kernels.steiner_dp(dist, tarr)
    full = (1 << len(terms)) - 1
    root = terms[0]
    closure_edges = []
    _dw_edges(choice_u, choice_split, full, root, closure_edges)
    verts = set(terms)
    pool = set()
    for u, v in closure_edges:
        walk = table.path(u, v)
        verts.update(walk)
        pool.update((min(a, b), max(a, b)) for a, b in zip(walk, walk[1:]))
    es = _kruskal(g, sorted(verts), sorted(pool))
    vs, es = prune_leaves(sorted(verts), es, set(terms))
    t = Tree(vs, es)
    got = tree_cost(g, t)
    want = float(dp[full, root])
    if abs(got - want) > 1e-7:
        raise AssertionError(f"reconstructed tree costs {got}, dp says {want}")
    return t


SOLVERS = {
    "kmb": SteinerSolver("kmb", 2.0, kmb_steiner),
    "exact": SteinerSolver("exact", 1.0, dreyfus_wagner),
}


def get_solver(name: str) -> SteinerSolver:
    if name not in SOLVERS:
        raise ValueError(f"unknown solver '{name}'")
    return SOLVERS[name]
