"""Numba-compiled kernels.

The hot loops live here: all-pairs shortest paths with deterministic
predecessor ties, the Steiner subset DP, and the exhaustive spanning-tree
oracle. `csistp.kernels` selects this module or the pure-numpy twin in
`_kernels_numpy` at import time; both expose identical signatures and
identical tie-breaking, so their outputs match bitwise.
"""

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True, nogil=True)
def floyd_warshall(cost):
    """All-pairs shortest paths plus predecessor matrix.

    pred[i, j] is the vertex preceding j on the chosen i -> j path (-1 on
    the diagonal). Of equally short paths the one with the smaller
    predecessor index wins, so reconstruction is deterministic.
    """
    n = cost.shape[0]
    dist = cost.copy()
    pred = np.empty((n, n), np.int64)
    for i in range(n):
        for j in range(n):
            pred[i, j] = -1 if i == j else i
    for k in range(n):
        for i in range(n):
            dik = dist[i, k]
            for j in range(n):
                alt = dik + dist[k, j]
                if alt < dist[i, j]:
                    dist[i, j] = alt
                    pred[i, j] = pred[k, j]
                elif alt == dist[i, j] and pred[k, j] >= 0 and pred[k, j] < pred[i, j]:
                    pred[i, j] = pred[k, j]
    return dist, pred


@njit(cache=True, nogil=True)
def steiner_dp(dist, terms):
    """Subset DP for optimal Steiner trees over a distance-closed matrix.

    dp[S, v] is the cheapest cost of a tree connecting the terminals picked
    by bitmask S with vertex v. choice_u[S, v] records the merge vertex and
    choice_split[S, u] the canonical submask chosen there, for backtracking.
    """
    n = dist.shape[0]
    t = terms.shape[0]
    full = 1 << t
    dp = np.full((full, n), np.inf)
    choice_u = np.full((full, n), -1, np.int64)
    choice_split = np.zeros((full, n), np.int64)
    for ti in range(t):
        s = 1 << ti
        for v in range(n):
            dp[s, v] = dist[terms[ti], v]
            choice_u[s, v] = terms[ti]
    tmp = np.empty(n)
    for s in range(1, full):
        if s & (s - 1) == 0:
            continue
        low = s & (-s)
        for v in range(n):
            tmp[v] = np.inf
        sub = (s - 1) & s
        while sub > 0:
            if sub & low:
                rest = s ^ sub
                for v in range(n):
                    cand = dp[sub, v] + dp[rest, v]
                    if cand < tmp[v]:
                        tmp[v] = cand
                        choice_split[s, v] = sub
            sub = (sub - 1) & s
        for v in range(n):
            best = np.inf
            bu = -1
            for u in range(n):
                cand = tmp[u] + dist[u, v]
                if cand < best:
                    best = cand
                    bu = u
            dp[s, v] = best
            choice_u[s, v] = bu
    return dp, choice_u, choice_split


@njit(cache=True, nogil=True)
def oracle_best_tree(cost, cluster_id, required, k, bound):
    """Cheapest feasible tree spanning all m vertices of `cost`.

    Enumerates every labeled tree via Prüfer sequences in lexicographic
    order. A tree is feasible when (a) each non-terminal leaf hangs off a
    required-internal terminal, (b) the minimal subtrees spanning the k
    clusters are pairwise vertex-disjoint, and (c) every required-internal
    terminal either has degree >= 2 inside its minimal subtree or can be
    handed an adjacent free Steiner vertex without starving another cluster.

    cluster_id[v] is the cluster index of terminal v, -1 for Steiner
    vertices; required[v] marks required-internal terminals. Trees costing
    >= bound are skipped, so bound also seeds the running best.
    Returns (best_cost, best_edges, found); ties keep the first tree.
    """
    m = cost.shape[0]
    ne = m - 1
    best_cost = bound
    best_edges = np.full((ne, 2), -1, np.int64)
    found = False

    total = 1
    for _ in range(m - 2):
        total *= m

    seq = np.zeros(max(m - 2, 1), np.int64)
    deg = np.empty(m, np.int64)
    edges = np.empty((ne, 2), np.int64)
    degf = np.empty(m, np.int64)
    nbsum = np.empty(m, np.int64)
    degc = np.empty(m, np.int64)
    nbs = np.empty(m, np.int64)
    alive = np.empty(m, np.uint8)
    stack = np.empty(m, np.int64)
    sub_id = np.empty(m, np.int64)
    dem_v = np.empty(m, np.int64)
    dem_c = np.empty(m, np.int64)
    dem_n = np.empty(m, np.int64)
    free_list = np.empty(m, np.int64)
    free_pos = np.empty(m, np.int64)
    assign = np.empty(m, np.int64)

    for _t in range(total):
        # -- decode the current sequence, abandoning once cost >= best --
        ok = True
        for v in range(m):
            deg[v] = 1
        for i in range(m - 2):
            deg[seq[i]] += 1
        ptr = 0
        leaf = -1
        c = 0.0
        for i in range(m - 2):
            if leaf < 0:
                while deg[ptr] != 1:
                    ptr += 1
                leaf = ptr
            v = seq[i]
            edges[i, 0] = leaf
            edges[i, 1] = v
            c += cost[leaf, v]
            deg[leaf] = 0
            deg[v] -= 1
            if deg[v] == 1 and v < ptr:
                leaf = v
            else:
                leaf = -1
            if c >= best_cost:
                ok = False
                break
        if ok:
            u1 = -1
            u2 = -1
            for v in range(m):
                if deg[v] == 1:
                    if u1 < 0:
                        u1 = v
                    else:
                        u2 = v
                        break
            edges[ne - 1, 0] = u1
            edges[ne - 1, 1] = u2
            c += cost[u1, u2]
            if c >= best_cost:
                ok = False

        if ok:
            # tree degrees and neighbour index sums
            for v in range(m):
                degf[v] = 0
                nbsum[v] = 0
            for e in range(ne):
                a = edges[e, 0]
                b = edges[e, 1]
                degf[a] += 1
                degf[b] += 1
                nbsum[a] += b
                nbsum[b] += a
            # a Steiner leaf is only worth keeping on a required terminal
            for v in range(m):
                if degf[v] == 1 and cluster_id[v] < 0:
                    if not required[nbsum[v]]:
                        ok = False
                        break

        if ok:
            # minimal subtree of each cluster by leaf peeling; overlap kills
            for v in range(m):
                sub_id[v] = -1
            for ci in range(k):
                for v in range(m):
                    degc[v] = degf[v]
                    nbs[v] = nbsum[v]
                    alive[v] = 1
                sp = 0
                for v in range(m):
                    if degc[v] == 1 and cluster_id[v] != ci:
                        stack[sp] = v
                        sp += 1
                while sp > 0:
                    sp -= 1
                    v = stack[sp]
                    if alive[v] == 0 or degc[v] != 1:
                        continue
                    u = nbs[v]
                    alive[v] = 0
                    degc[v] = 0
                    degc[u] -= 1
                    nbs[u] -= v
                    if degc[u] == 1 and cluster_id[u] != ci:
                        stack[sp] = u
                        sp += 1
                for v in range(m):
                    if alive[v] == 1:
                        if sub_id[v] >= 0:
                            ok = False
                            break
                        sub_id[v] = ci
                if not ok:
                    break

        ndem = 0
        if ok:
            # internality: degree inside the minimal subtree, else demand a
            # free Steiner neighbour
            for v in range(m):
                if not required[v]:
                    continue
                ci = cluster_id[v]
                din = 0
                nfree = 0
                for e in range(ne):
                    a = edges[e, 0]
                    b = edges[e, 1]
                    w = -1
                    if a == v:
                        w = b
                    elif b == v:
                        w = a
                    if w >= 0:
                        if sub_id[w] == ci:
                            din += 1
                        elif sub_id[w] < 0:
                            nfree += 1
                if din >= 2:
                    continue
                if nfree < 2 - din:
                    ok = False
                    break
                dem_v[ndem] = v
                dem_c[ndem] = ci
                dem_n[ndem] = 2 - din
                ndem += 1

        if ok and ndem > 0 and k > 1:
            # assign each involved free vertex to one cluster; exhaustive
            nf = 0
            for v in range(m):
                free_pos[v] = -1
            for d in range(ndem):
                v = dem_v[d]
                for e in range(ne):
                    a = edges[e, 0]
                    b = edges[e, 1]
                    w = -1
                    if a == v:
                        w = b
                    elif b == v:
                        w = a
                    if w >= 0 and sub_id[w] < 0 and free_pos[w] < 0:
                        free_pos[w] = nf
                        free_list[nf] = w
                        nf += 1
            for p in range(nf):
                assign[p] = 0
            sat = False
            while True:
                good = True
                for d in range(ndem):
                    v = dem_v[d]
                    ci = dem_c[d]
                    hits = 0
                    for e in range(ne):
                        a = edges[e, 0]
                        b = edges[e, 1]
                        w = -1
                        if a == v:
                            w = b
                        elif b == v:
                            w = a
                        if w >= 0 and sub_id[w] < 0 and assign[free_pos[w]] == ci:
                            hits += 1
                    if hits < dem_n[d]:
                        good = False
                        break
                if good:
                    sat = True
                    break
                p = nf - 1
                while p >= 0:
                    assign[p] += 1
                    if assign[p] < k:
                        break
                    assign[p] = 0
                    p -= 1
                if p < 0:
                    break
            if not sat:
                ok = False

        if ok:
            best_cost = c
            for e in range(ne):
                best_edges[e, 0] = edges[e, 0]
                best_edges[e, 1] = edges[e, 1]
            found = True

        # -- advance the sequence odometer --
        i = m - 3
        while i >= 0:
            seq[i] += 1
            if seq[i] < m:
                break
            seq[i] = 0
            i -= 1

    return best_cost, best_edges, found
