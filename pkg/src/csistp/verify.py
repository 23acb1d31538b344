"""Solution validators for the clustered and selected-internal properties.

The clustered check runs on the minimal-subtree disjointness criterion: a
tree splits into per-cluster subtrees by removing k-1 edges exactly when the
minimal subtrees spanning the clusters are pairwise vertex-disjoint. The
witness cut assigns every free vertex to its hop-nearest cluster subtree and
cuts the k-1 region boundary edges. A brute-force cut enumeration exists for
cross-validation.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

from .graph import Tree, prune_leaves, tree_cost


def minimal_subtree(tree: Tree, keep) -> tuple:
    """(vertices, edges) of the minimal subtree of tree spanning keep."""
    return prune_leaves(tree.vertices, tree.edges, set(keep))


def spread_regions(adj, seed_label: dict) -> dict:
    """Spread labels over the tree by multi-source BFS; first visit wins."""
    region = dict(seed_label)
    queue = deque(sorted(seed_label))
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in region:
                region[y] = region[x]
                queue.append(y)
    return region


def _require_spanning(tree: Tree, clusters):
    vs = set(tree.vertices)
    for c in clusters:
        for v in c:
            if v not in vs:
                raise ValueError("tree does not span all terminals")


def check_clustered(tree: Tree, clusters):
    """Can the tree be cut into per-cluster subtrees by k-1 edge removals?

    Returns (True, witness_edges) or (False, overlap_vertex) where the
    vertex belongs to two clusters' minimal subtrees at once.
    """
    _require_spanning(tree, clusters)
    k = len(clusters)
    if k == 1:
        return True, ()
    owner = {}
    for i, cluster in enumerate(clusters):
        mv, _ = minimal_subtree(tree, cluster)
        for v in mv:
            if v in owner:
                return False, v
            owner[v] = i
    region = spread_regions(tree.adjacency(), owner)
    witness = tuple(sorted(e for e in tree.edges if region[e[0]] != region[e[1]]))
    if len(witness) != k - 1:
        raise AssertionError(f"region cut produced {len(witness)} edges for k={k}")
    return True, witness


def cut_is_valid(tree: Tree, clusters, cuts) -> bool:
    """Do these k-1 edge removals separate the clusters exactly?"""
    k = len(clusters)
    cutset = {(min(u, v), max(u, v)) for u, v in cuts}
    if len(cutset) != k - 1 or not cutset <= set(tree.edges):
        return False
    parent = {v: v for v in tree.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in tree.edges:
        if (u, v) not in cutset:
            parent[find(u)] = find(v)
    comps = []
    for cluster in clusters:
        roots = {find(v) for v in cluster}
        if len(roots) != 1:
            return False
        comps.append(roots.pop())
    return len(set(comps)) == k


def check_clustered_bruteforce(tree: Tree, clusters):
    """Exhaustive cut search; exponential, for cross-validation only."""
    _require_spanning(tree, clusters)
    k = len(clusters)
    if k == 1:
        return True, ()
    for cuts in itertools.combinations(tree.edges, k - 1):
        if cut_is_valid(tree, clusters, cuts):
            return True, tuple(sorted(cuts))
    return False, None


def check_internal(tree: Tree, clusters, required_internal, cuts, mode: str = "literal"):
    """Are all required vertices internal (degree >= 2) in their subtree?

    literal mode measures degree inside the cut component, strict mode inside
    the minimal subtree spanning the cluster. Returns (flag, violations).
    """
    if mode not in ("literal", "strict"):
        raise ValueError(f"unknown mode '{mode}'")
    bad = []
    if mode == "literal":
        cutset = {(min(u, v), max(u, v)) for u, v in cuts}
        deg = {v: 0 for v in tree.vertices}
        for u, v in tree.edges:
            if (u, v) not in cutset:
                deg[u] += 1
                deg[v] += 1
        for req in required_internal:
            bad.extend(v for v in req if deg[v] < 2)
    else:
        for cluster, req in zip(clusters, required_internal):
            if not req:
                continue
            _, sub_edges = minimal_subtree(tree, cluster)
            deg = {}
            for u, v in sub_edges:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            bad.extend(v for v in req if deg.get(v, 0) < 2)
    return not bad, tuple(sorted(bad))


@dataclass(frozen=True)
class VerificationReport:
    is_tree: bool
    spans_terminals: bool
    clustered: bool
    cut_edges: tuple
    internal_ok: bool
    violations: tuple
    cost: float
    mode: str
    messages: tuple

    @property
    def ok(self) -> bool:
        return self.is_tree and self.spans_terminals and self.clustered and self.internal_ok

    def __str__(self):
        lines = [
            f"is_tree: {'yes' if self.is_tree else 'no'}",
            f"spans_terminals: {'yes' if self.spans_terminals else 'no'}",
            f"clustered: {'yes' if self.clustered else 'no'}",
            f"cut_edges: {list(self.cut_edges)}",
            f"internal_ok ({self.mode}): {'yes' if self.internal_ok else 'no'}",
        ]
        if self.violations:
            lines.append(f"violations: {list(self.violations)}")
        lines.append(f"cost: {self.cost}")
        for m in self.messages:
            lines.append(f"note: {m}")
        lines.append(f"verdict: {'valid' if self.ok else 'invalid'}")
        return "\n".join(lines)


def _failed(messages, mode, cost=math.nan):
    return VerificationReport(
        is_tree=False, spans_terminals=False, clustered=False, cut_edges=(),
        internal_ok=False, violations=(), cost=cost, mode=mode,
        messages=tuple(messages),
    )


def verify_solution(inst, vertices, edges, cut_edges=None, mode: str = "literal") -> VerificationReport:
    """Full check of a claimed solution against an instance.

    If cut_edges are supplied they must themselves separate the clusters;
    otherwise a witness cut is derived from the tree. Tolerates arbitrary
    vertex and edge lists: failures turn into report flags, not exceptions.
    """
    n = inst.n
    ids = [int(v) for v in vertices] + [int(x) for e in edges for x in e]
    if any(v < 0 or v >= n for v in ids):
        return _failed(["not a tree: vertex index out of range"], mode)
    try:
        tree = Tree(tuple(int(v) for v in vertices), tuple((int(u), int(v)) for u, v in edges))
    except ValueError as e:
        return _failed([f"not a tree: {e}"], mode)
    cost = tree_cost(inst.graph, tree)
    vs = set(tree.vertices)
    spans = all(v in vs for v in inst.terminals)
    if not spans:
        return VerificationReport(
            is_tree=True, spans_terminals=False, clustered=False, cut_edges=(),
            internal_ok=False, violations=(), cost=cost, mode=mode,
            messages=("tree does not span all terminals",),
        )
    messages = []
    clustered, witness = check_clustered(tree, inst.clusters)
    if not clustered:
        messages.append(f"minimal cluster subtrees overlap at vertex {witness}")
        return VerificationReport(
            is_tree=True, spans_terminals=True, clustered=False, cut_edges=(),
            internal_ok=False, violations=(), cost=cost, mode=mode,
            messages=tuple(messages),
        )
    cuts = witness
    if cut_edges is not None:
        given = tuple((min(int(u), int(v)), max(int(u), int(v))) for u, v in cut_edges)
        if cut_is_valid(tree, inst.clusters, given):
            cuts = tuple(sorted(given))
        else:
            messages.append("claimed cut edges do not separate the clusters; using derived witness")
    internal_ok, violations = check_internal(tree, inst.clusters, inst.required_internal, cuts, mode)
    return VerificationReport(
        is_tree=True, spans_terminals=True, clustered=True, cut_edges=cuts,
        internal_ok=internal_ok, violations=violations, cost=cost, mode=mode,
        messages=tuple(messages),
    )
