import numpy as np
import pytest

from csistp import MetricGraph, contract_clusters

import brute


def _graph4():
    # R_1 = {0,1}, Steiner {2,3}
    cost = np.array(
        [
            [0.0, 1.0, 5.0, 4.0],
            [1.0, 0.0, 3.0, 6.0],
            [5.0, 3.0, 0.0, 2.0],
            [4.0, 6.0, 2.0, 0.0],
        ]
    )
    return MetricGraph(cost)


def test_contract_min_rule_and_rep():
    q = contract_clusters(_graph4(), [(0, 1)])
    # quotient order: r_1, then Steiner 2, 3
    assert q.k == 1
    assert q.terminal_images == (0,)
    assert q.origin[0] == ("cluster", 0)
    assert q.origin[1] == ("steiner", 2)
    assert q.origin[2] == ("steiner", 3)
    assert q.graph.cost[0, 1] == 3.0
    assert q.expand_edge((0, 1)) == (1, 2)
    assert q.graph.cost[0, 2] == 4.0
    assert q.expand_edge((0, 2)) == (0, 3)
    # Steiner-Steiner edges untouched
    assert q.graph.cost[1, 2] == 2.0
    assert q.expand_edge((2, 1)) == (2, 3)


def test_contract_singleton_clusters():
    g = _graph4()
    q = contract_clusters(g, [(0,), (1,)])
    assert q.graph.n == 4
    assert q.graph.cost[0, 1] == g.cost[0, 1]
    assert q.expand_edge((0, 1)) == (0, 1)


def test_contract_counts_vertices():
    g = _graph4()
    q = contract_clusters(g, [(0, 1, 2, 3)])
    assert q.graph.n == 1
    q = contract_clusters(g, [(1, 3)])
    assert q.graph.n == 3


def test_contract_tie_breaks_lexicographically():
    cost = np.full((4, 4), 7.0)
    np.fill_diagonal(cost, 0.0)
    q = contract_clusters(MetricGraph(cost), [(0, 2), (1, 3)])
    assert q.expand_edge((0, 1)) == (0, 1)
    q2 = contract_clusters(MetricGraph(cost), [(1, 3), (0, 2)])
    assert q2.expand_edge((0, 1)) == (1, 0)  # cluster 0 is now {1,3}


def test_expansion_cost_is_exact():
    rng = np.random.default_rng(20)
    for _ in range(200):
        n = int(rng.integers(3, 9))
        g = MetricGraph(brute.random_metric_cost(rng, n))
        k = int(rng.integers(1, 3 + 1))
        labels = [int(rng.integers(0, k)) for _ in range(n)]
        for i in range(k):
            labels[i] = i  # nonempty
        keep_free = rng.random(n) < 0.3
        clusters = [
            tuple(v for v in range(n) if labels[v] == i and not (keep_free[v] and v >= k))
            for i in range(k)
        ]
        clusters = [c for c in clusters if c]
        q = contract_clusters(g, clusters)
        nq = q.graph.n
        for x in range(nq):
            for y in range(x + 1, nq):
                u, v = q.expand_edge((x, y))
                assert g.cost[u, v] == q.graph.cost[x, y]  # bitwise, no tolerance
                # the min rule really is the min
                def members(z):
                    kind, idx = q.origin[z]
                    return clusters[idx] if kind == "cluster" else (idx,)

                want = min(g.cost[a, b] for a in members(x) for b in members(y))
                assert q.graph.cost[x, y] == want


def test_contract_is_order_invariant():
    rng = np.random.default_rng(21)
    for _ in range(50):
        n = int(rng.integers(4, 9))
        g = MetricGraph(brute.random_metric_cost(rng, n))
        clusters = [(0, 1), (2, 3)]
        q1 = contract_clusters(g, clusters)
        q2 = contract_clusters(g, list(reversed(clusters)))
        # same matrix up to swapping the two cluster images
        perm = [1, 0] + list(range(2, q1.graph.n))
        assert np.array_equal(q1.graph.cost, q2.graph.cost[np.ix_(perm, perm)])


def test_contract_rejects_bad_clusters():
    g = _graph4()
    with pytest.raises(ValueError):
        contract_clusters(g, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        contract_clusters(g, [()])
    with pytest.raises(ValueError):
        contract_clusters(g, [(0, 9)])


def test_expand_unknown_edge():
    q = contract_clusters(_graph4(), [(0, 1)])
    with pytest.raises(ValueError, match="unknown quotient edge"):
        q.expand_edge((0, 9))
