import numpy as np
import pytest

from csistp import (
    MetricGraph,
    Tree,
    induced_subgraph,
    is_metric,
    metric_closure,
    prune_leaves,
    tree_cost,
)

import brute


def test_metric_graph_rejects_bad_matrices():
    with pytest.raises(ValueError, match="square"):
        MetricGraph(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="not symmetric"):
        MetricGraph(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError, match="diagonal"):
        MetricGraph(np.array([[1.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ValueError, match="negative"):
        MetricGraph(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    with pytest.raises(ValueError, match="finite"):
        MetricGraph(np.array([[0.0, np.inf], [np.inf, 0.0]]))
    with pytest.raises(ValueError):
        MetricGraph(np.zeros((0, 0)))


def test_metric_graph_check_metric_flag():
    # 0-2 direct edge is longer than the 0-1-2 detour
    bad = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]])
    MetricGraph(bad)
    with pytest.raises(ValueError, match="triangle"):
        MetricGraph(bad, check_metric=True)


def test_metric_graph_is_immutable_and_hashable():
    g = MetricGraph(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        g.cost[0, 1] = 7.0
    h = MetricGraph(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert g == h
    assert hash(g) == hash(h)
    assert g.n == 2


def test_is_metric_matches_naive_oracle():
    rng = np.random.default_rng(0)
    agree = 0
    for _ in range(60):
        n = int(rng.integers(2, 8))
        c = brute.random_metric_cost(rng, n)
        if rng.random() < 0.5 and n >= 3:
            # break one triangle on purpose
            c = c.copy()
            c[0, 1] = c[1, 0] = c[0, 1] * 3 + 1
        g = MetricGraph(c)
        assert is_metric(g) == brute.is_metric_naive(c)
        agree += 1
    assert agree == 60


def test_tree_canonicalizes_vertices_and_edges():
    t = Tree((3, 1, 2, 1), ((3, 1), (2, 3)))
    assert t.vertices == (1, 2, 3)
    assert t.edges == ((1, 3), (2, 3))
    assert t.adjacency() == {1: [3], 2: [3], 3: [1, 2]}
    assert t.degree(3) == 2


def test_tree_rejects_malformed_input():
    with pytest.raises(ValueError):
        Tree((0, 1, 2), ((0, 1),))
    with pytest.raises(ValueError, match="duplicate edge"):
        Tree((0, 1, 2), ((0, 1), (1, 0)))
    with pytest.raises(ValueError, match="self loop"):
        Tree((0, 1), ((0, 0),))
    with pytest.raises(ValueError, match="leaves the vertex set"):
        Tree((0, 1), ((0, 5),))
    with pytest.raises(ValueError, match="cycle"):
        Tree((0, 1, 2, 3), ((0, 1), (1, 2), (2, 0)))


def test_tree_single_vertex():
    t = Tree((4,), ())
    assert t.vertices == (4,)
    assert t.edges == ()
    assert t.degree(4) == 0


def test_tree_cost():
    g = MetricGraph(np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.5], [2.0, 1.5, 0.0]]))
    t = Tree((0, 1, 2), ((0, 1), (1, 2)))
    assert tree_cost(g, t) == pytest.approx(2.5)


def test_metric_closure_matches_naive():
    rng = np.random.default_rng(1)
    for _ in range(30):
        n = int(rng.integers(2, 9))
        w = rng.uniform(1.0, 10.0, size=(n, n))
        w = np.triu(w, 1)
        w = w + w.T
        g = MetricGraph(w)
        closed, table = metric_closure(g)
        want = np.array(brute.naive_closure(w))
        assert np.allclose(closed.cost, want, atol=1e-9)
        assert is_metric(closed)
        # every reported path must realize the closure distance
        for u in range(n):
            for v in range(n):
                p = table.path(u, v)
                assert p[0] == u and p[-1] == v
                got = sum(w[p[i], p[i + 1]] for i in range(len(p) - 1))
                assert got == pytest.approx(closed.cost[u, v], abs=1e-9)


def test_metric_closure_path_is_deterministic():
    w = np.array(
        [
            [0.0, 1.0, 1.0, 2.0],
            [1.0, 0.0, 2.0, 1.0],
            [1.0, 2.0, 0.0, 1.0],
            [2.0, 1.0, 1.0, 0.0],
        ]
    )
    # two shortest 0-3 routes exist; repeated calls must agree
    _, t1 = metric_closure(MetricGraph(w))
    _, t2 = metric_closure(MetricGraph(w))
    assert t1.path(0, 3) == t2.path(0, 3)


def test_prune_leaves_keeps_required_set():
    # path 0-1-2-3-4, keep the middle
    vs, es = prune_leaves((0, 1, 2, 3, 4), ((0, 1), (1, 2), (2, 3), (3, 4)), {1, 3})
    assert vs == (1, 2, 3)
    assert es == ((1, 2), (2, 3))
    # pruning again changes nothing
    assert prune_leaves(vs, es, {1, 3}) == (vs, es)


def test_prune_leaves_single_keep_vertex():
    vs, es = prune_leaves((0, 1, 2), ((0, 1), (1, 2)), {0})
    assert vs == (0,)
    assert es == ()


def test_induced_subgraph():
    g = MetricGraph(np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 3.0], [2.0, 3.0, 0.0]]))
    sub, index = induced_subgraph(g, [2, 0])
    assert index == (0, 2)
    assert sub.cost[0, 1] == 2.0
    with pytest.raises(ValueError, match="empty induced set"):
        induced_subgraph(g, [])
    with pytest.raises(ValueError, match="outside graph"):
        induced_subgraph(g, [0, 9])
