"""Pure-numpy twins of the numba kernels.

Same signatures, same tie-breaking, bitwise-identical outputs; selected by
`csistp.kernels` when CSISTP_PURE_NUMPY is set or numba is unavailable. The
oracle enumerates trees in vectorized blocks instead of one at a time, with a
plain-python fallback for the rare trees that need the free-vertex
assignment search.
"""

import itertools

import numpy as np

BACKEND = "numpy"

_BLOCK = 2048


def floyd_warshall(cost):
    """All-pairs shortest paths plus predecessor matrix (see numba twin)."""
    n = cost.shape[0]
    dist = cost.copy()
    pred = np.where(
        np.eye(n, dtype=bool), -1, np.arange(n, dtype=np.int64)[:, None]
    ).astype(np.int64)
    for k in range(n):
        alt = dist[:, k][:, None] + dist[k, :][None, :]
        cand_pred = np.broadcast_to(pred[k, :], (n, n))
        lt = alt < dist
        eq = (alt == dist) & (cand_pred >= 0) & (cand_pred < pred)
        pred = np.where(lt | eq, cand_pred, pred)
        dist = np.where(lt, alt, dist)
    return dist, pred


def steiner_dp(dist, terms):
    """Subset DP for optimal Steiner trees (see numba twin)."""
    n = dist.shape[0]
    t = terms.shape[0]
    full = 1 << t
    dp = np.full((full, n), np.inf)
    choice_u = np.full((full, n), -1, np.int64)
    choice_split = np.zeros((full, n), np.int64)
    for ti in range(t):
        s = 1 << ti
        dp[s] = dist[terms[ti]]
        choice_u[s] = terms[ti]
    for s in range(1, full):
        if s & (s - 1) == 0:
            continue
        low = s & (-s)
        tmp = np.full(n, np.inf)
        sub = (s - 1) & s
        while sub > 0:
            if sub & low:
                cand = dp[sub] + dp[s ^ sub]
                upd = cand < tmp
                choice_split[s][upd] = sub
                tmp = np.where(upd, cand, tmp)
            sub = (sub - 1) & s
        way = tmp[:, None] + dist
        dp[s] = way.min(axis=0)
        choice_u[s] = way.argmin(axis=0)
    return dp, choice_u, choice_split


def _assignment_ok(edges, sub_id, cluster_id, dem, k):
    """Exhaustively try to give every demander enough adjacent free Steiner
    vertices of its own cluster. dem is a list of (vertex, cluster, need)."""
    free_nbrs = {}
    involved = []
    for v, _ci, _need in dem:
        nbrs = []
        for a, b in edges:
            w = -1
            if a == v:
                w = b
            elif b == v:
                w = a
            if w >= 0 and sub_id[w] < 0:
                nbrs.append(w)
                if w not in free_nbrs:
                    free_nbrs[w] = len(involved)
                    involved.append(w)
    for assign in itertools.product(range(k), repeat=len(involved)):
        good = True
        for v, ci, need in dem:
            hits = 0
            for a, b in edges:
                w = -1
                if a == v:
                    w = b
                elif b == v:
                    w = a
                if w >= 0 and sub_id[w] < 0 and assign[free_nbrs[w]] == ci:
                    hits += 1
            if hits < need:
                good = False
                break
        if good:
            return True
    return False


def oracle_best_tree(cost, cluster_id, required, k, bound):
    """Cheapest feasible tree spanning all m vertices (see numba twin)."""
    m = cost.shape[0]
    ne = m - 1
    total = m ** max(0, m - 2)
    best_cost = float(bound)
    best_edges = np.full((ne, 2), -1, np.int64)
    found = False

    steiner = cluster_id < 0
    req = required.astype(bool)
    req_any = bool(req.any())
    if m >= 3:
        powers = m ** np.arange(m - 3, -1, -1, dtype=np.int64)

    for start in range(0, total, _BLOCK):
        stop = min(start + _BLOCK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        b = idx.shape[0]
        rows = np.arange(b)

        # decode: always pick the smallest current leaf
        if m >= 3:
            seqs = (idx[:, None] // powers[None, :]) % m
        else:
            seqs = np.zeros((b, 0), np.int64)
        deg = np.ones((b, m), np.int64)
        for col in range(seqs.shape[1]):
            np.add.at(deg, (rows, seqs[:, col]), 1)
        edges = np.empty((b, ne, 2), np.int64)
        for i in range(seqs.shape[1]):
            leaf = np.argmax(deg == 1, axis=1)
            v = seqs[:, i]
            edges[:, i, 0] = leaf
            edges[:, i, 1] = v
            deg[rows, leaf] = 0
            deg[rows, v] -= 1
        u1 = np.argmax(deg == 1, axis=1)
        deg[rows, u1] = 0
        u2 = np.argmax(deg == 1, axis=1)
        edges[:, ne - 1, 0] = u1
        edges[:, ne - 1, 1] = u2

        e0 = edges[:, :, 0]
        e1 = edges[:, :, 1]
        costs = cost[e0, e1].sum(axis=1)
        cand = costs < best_cost
        if not cand.any():
            continue

        degf = np.zeros((b, m), np.int64)
        nbsum = np.zeros((b, m), np.int64)
        np.add.at(degf, (rows[:, None], e0), 1)
        np.add.at(degf, (rows[:, None], e1), 1)
        np.add.at(nbsum, (rows[:, None], e0), e1)
        np.add.at(nbsum, (rows[:, None], e1), e0)

        # a Steiner leaf is only worth keeping on a required terminal
        leaf_mask = (degf == 1) & steiner[None, :]
        nb = np.where(leaf_mask, nbsum, 0)
        cand &= ~(leaf_mask & ~req[nb]).any(axis=1)
        if not cand.any():
            continue

        # minimal subtree of each cluster by parallel leaf peeling
        sub_id = np.full((b, m), -1, np.int64)
        overlap = np.zeros(b, bool)
        for ci in range(k):
            keep = cluster_id == ci
            degc = degf.copy()
            alive = np.ones((b, m), bool)
            edge_alive = np.ones((b, ne), bool)
            while True:
                prunable = alive & (degc == 1) & ~keep[None, :]
                if not prunable.any():
                    break
                dead = edge_alive & (
                    prunable[rows[:, None], e0] | prunable[rows[:, None], e1]
                )
                w = dead.astype(np.int64)
                np.add.at(degc, (rows[:, None], e0), -w)
                np.add.at(degc, (rows[:, None], e1), -w)
                alive &= ~prunable
                edge_alive &= ~dead
            overlap |= (alive & (sub_id >= 0)).any(axis=1)
            sub_id = np.where(alive, ci, sub_id)
        cand &= ~overlap
        if not cand.any():
            continue

        if req_any:
            # degree inside the own minimal subtree and free-neighbour count
            din = np.zeros((b, m), np.int64)
            fnb = np.zeros((b, m), np.int64)
            cid0 = cluster_id[e0]
            cid1 = cluster_id[e1]
            s0 = sub_id[rows[:, None], e0]
            s1 = sub_id[rows[:, None], e1]
            np.add.at(din, (rows[:, None], e0), (s1 == cid0).astype(np.int64))
            np.add.at(din, (rows[:, None], e1), (s0 == cid1).astype(np.int64))
            np.add.at(fnb, (rows[:, None], e0), (s1 < 0).astype(np.int64))
            np.add.at(fnb, (rows[:, None], e1), (s0 < 0).astype(np.int64))
            needs = np.where(req[None, :], 2 - din, 0)
            needs = np.maximum(needs, 0)
            cand &= ~(needs > fnb).any(axis=1)
            if k > 1:
                pend = cand & (needs > 0).any(axis=1)
                for r in np.where(pend)[0]:
                    dem = [
                        (int(v), int(cluster_id[v]), int(needs[r, v]))
                        for v in np.where(needs[r] > 0)[0]
                    ]
                    tree = [(int(a), int(bb)) for a, bb in edges[r]]
                    if not _assignment_ok(tree, sub_id[r], cluster_id, dem, k):
                        cand[r] = False

        if cand.any():
            ccosts = np.where(cand, costs, np.inf)
            j = int(np.argmin(ccosts))
            if ccosts[j] < best_cost:
                best_cost = float(ccosts[j])
                best_edges = edges[j].copy()
                found = True

    return best_cost, best_edges, found
