"""Exact brute-force solvers used as acceptance oracles.

Every vertex subset containing the terminals is tried; on each subset every
labeled spanning tree is enumerated through its Pruefer sequence inside the
compiled kernel, which also applies the feasibility filters. Exponential on
two axes, hence the vertex-count limit.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Tree, tree_cost
from .instance import Instance
from .verify import minimal_subtree, spread_regions

DEFAULT_ORACLE_LIMIT = 9
ORACLE_LIMIT_ENV = "CSISTP_ORACLE_LIMIT"


@dataclass(frozen=True)
class OracleResult:
    """Optimal tree plus witness cut, or an infeasibility verdict."""

    found: bool
    cost: float
    vertices: tuple
    edges: tuple
    cut_edges: tuple
    local_cost: float
    inter_cost: float

    def __str__(self):
        if not self.found:
            return "no feasible tree found"
        return f"optimum {self.cost} on {len(self.vertices)} vertices"


def oracle_limit(limit=None) -> int:
    """Resolve the vertex-count limit (argument, else environment, else 9)."""
    if limit is not None:
        return int(limit)
    raw = os.environ.get(ORACLE_LIMIT_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_ORACLE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"invalid {ORACLE_LIMIT_ENV} value {raw!r}") from None


def _witness_cut(tree: Tree, inst: Instance):
    """A cut proving the winning tree feasible in literal mode.

    Free vertices claimed by a demanding required vertex are pinned to that
    cluster before the region spread; the kernel already proved such an
    assignment exists.
    """
    k = inst.k
    if k == 1:
        return ()
    owner = {}
    for i, cluster in enumerate(inst.clusters):
        mv, _ = minimal_subtree(tree, cluster)
        for v in mv:
            owner[v] = i
    adj = tree.adjacency()
    demands = []
    for i, req in enumerate(inst.required_internal):
        for v in req:
            din = sum(1 for w in adj[v] if owner.get(w, -1) == i)
            if din >= 2:
                continue
            demands.append((v, i, 2 - din))
    seed = dict(owner)
    if demands:
        involved = []
        pos = {}
        for v, _i, _need in demands:
            for w in adj[v]:
                if w not in owner and w not in pos:
                    pos[w] = len(involved)
                    involved.append(w)
        for assign in itertools.product(range(k), repeat=len(involved)):
            if all(
                sum(1 for w in adj[v] if w in pos and assign[pos[w]] == i) >= need
                for v, i, need in demands
            ):
                for v, i, _need in demands:
                    for w in adj[v]:
                        if w in pos and assign[pos[w]] == i:
                            seed[w] = i
                break
        else:
            raise AssertionError("kernel accepted a tree with no feasible assignment")
    region = spread_regions(adj, seed)
    witness = tuple(sorted(e for e in tree.edges if region[e[0]] != region[e[1]]))
    if len(witness) != k - 1:
        raise AssertionError(f"witness cut has {len(witness)} edges for k={k}")
    return witness


def _split_costs(g, tree: Tree, inst: Instance):
    local_edges = set()
    for cluster in inst.clusters:
        _, es = minimal_subtree(tree, cluster)
        local_edges.update(es)
    local = float(sum(g.cost[u, v] for u, v in local_edges))
    return local, tree_cost(g, tree) - local


def exact_csistp(inst: Instance, limit=None) -> OracleResult:
    """Minimum-cost feasible tree by exhaustive enumeration.

    Infeasibility is a normal result (found=False), so deliberately broken
    instances can be probed. Only structural breakage (overlapping clusters,
    out-of-range vertices) raises.
    """
    limit = oracle_limit(limit)
    if inst.n > limit:
        raise ValueError("oracle limit exceeded")
    flat = [v for c in inst.clusters for v in c]
    if len(set(flat)) != len(flat):
        raise ValueError("clusters overlap")
    if flat and (min(flat) < 0 or max(flat) >= inst.n):
        raise ValueError("cluster vertex out of range")
    terminals = list(inst.terminals)
    extras = [v for v in range(inst.n) if v not in set(terminals)]
    k = inst.k
    if k == 0:
        raise ValueError("instance has no clusters")
    req_all = {v for r in inst.required_internal for v in r}

    best = math.inf
    best_edges = None
    best_sub = None
    for mask in range(1 << len(extras)):
        chosen = [extras[i] for i in range(len(extras)) if mask >> i & 1]
        s = sorted(terminals + chosen)
        m = len(s)
        if m == 1:
            if not req_all and 0.0 < best:
                best, best_edges, best_sub = 0.0, (), s
            continue
        cost = np.ascontiguousarray(inst.graph.cost[np.ix_(s, s)])
        cluster_id = np.full(m, -1, dtype=np.int64)
        required = np.zeros(m, dtype=np.bool_)
        index = {v: j for j, v in enumerate(s)}
        for ci, cluster in enumerate(inst.clusters):
            for v in cluster:
                cluster_id[index[v]] = ci
        for v in req_all:
            required[index[v]] = True
        c, edges, found = kernels.oracle_best_tree(cost, cluster_id, required, k, best)
        if found:
            best = float(c)
            best_edges = tuple((s[int(a)], s[int(b)]) for a, b in edges)
            best_sub = s
    if best_edges is None:
        return OracleResult(False, math.inf, (), (), (), math.inf, math.inf)
    tree = Tree(tuple(best_sub), best_edges)
    cuts = _witness_cut(tree, inst)
    local, inter = _split_costs(inst.graph, tree, inst)
    return OracleResult(True, best, tree.vertices, tree.edges, cuts, local, inter)


def exact_cstp(inst: Instance, limit=None) -> OracleResult:
    """Clustered Steiner optimum: the same search with R' constraints erased."""
    relaxed = Instance(inst.graph, inst.clusters, tuple(() for _ in inst.clusters))
    return exact_csistp(relaxed, limit)
