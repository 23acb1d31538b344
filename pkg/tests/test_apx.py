import json

import numpy as np
import pytest

from csistp import (
    Instance,
    InstanceValidationError,
    MetricGraph,
    SolutionFormatError,
    dreyfus_wagner,
    exact_csistp,
    gen_euclidean,
    gen_random_metric,
    prim_mst,
    read_solution,
    solve_apx,
    theoretical_bound,
    tree_cost,
    verify_solution,
    write_solution,
)

import brute


def test_fixture5_frozen_solution(fixture5):
    sol = solve_apx(fixture5, "exact")
    assert sol.total_cost == pytest.approx(4.0)
    assert sol.local_cost == pytest.approx(2.0)
    assert sol.inter_cost == pytest.approx(2.0)
    assert sol.cut_edges == ((0, 2),)
    assert [lp.path for lp in sol.local_paths] == [(0, 1), (2, 3)]
    assert sol.bound == 5.0
    res = exact_csistp(fixture5)
    assert sol.total_cost == pytest.approx(res.cost)  # ratio 1.0 here


def test_theoretical_bound():
    assert theoretical_bound("exact") == 5.0
    assert theoretical_bound("kmb") == 6.0
    from csistp import SteinerSolver

    assert theoretical_bound(SteinerSolver("x", 1.39, None)) == pytest.approx(5.39)


def test_solve_rejects_invalid_instance():
    g = MetricGraph(np.ones((3, 3)) - np.eye(3))
    inst = Instance(g, ((0, 1), (1, 2)), ((), ()))
    with pytest.raises(InstanceValidationError, match="overlap"):
        solve_apx(inst)


def test_solve_rejects_unknown_names(fixture5):
    with pytest.raises(ValueError, match="unknown solver"):
        solve_apx(fixture5, "lp")
    with pytest.raises(ValueError, match="unknown endpoint rule"):
        solve_apx(fixture5, "kmb", "nope")


def test_output_always_verifies():
    rng = np.random.default_rng(60)
    for trial in range(40):
        n = int(rng.integers(5, 11))
        k = int(rng.integers(1, 4))
        seed = 600 + trial
        gen = gen_euclidean if trial % 2 else gen_random_metric
        inst = gen(n, k, seed=seed, internal_fraction=float(rng.random() * 0.7))
        for solver in ("kmb", "exact"):
            sol = solve_apx(inst, solver)
            report = verify_solution(inst, sol.tree.vertices, sol.tree.edges, sol.cut_edges)
            assert report.ok, f"{solver} n={n} k={k} seed={seed}: {report}"
            assert report.cost == pytest.approx(sol.total_cost, abs=1e-9)


def test_cost_split_is_exact():
    rng = np.random.default_rng(61)
    for trial in range(25):
        inst = gen_random_metric(int(rng.integers(5, 10)), int(rng.integers(1, 4)), seed=trial)
        sol = solve_apx(inst, "kmb")
        assert sol.local_cost + sol.inter_cost == sol.total_cost  # same stored floats
        assert tree_cost(inst.graph, sol.tree) == pytest.approx(sol.total_cost, abs=1e-9)
        assert sol.local_cost == pytest.approx(sum(lp.cost for lp in sol.local_paths))


def test_local_paths_within_twice_cluster_mst():
    rng = np.random.default_rng(62)
    for trial in range(25):
        inst = gen_euclidean(int(rng.integers(6, 11)), int(rng.integers(1, 4)), seed=trial * 7)
        sol = solve_apx(inst, "kmb")
        for lp in sol.local_paths:
            cluster = inst.clusters[lp.cluster_index]
            mst = prim_mst(inst.graph, cluster)
            assert lp.cost <= 2.0 * tree_cost(inst.graph, mst) + 1e-9


def test_required_vertices_are_path_interior():
    rng = np.random.default_rng(63)
    for trial in range(30):
        inst = gen_random_metric(9, 2, seed=trial, internal_fraction=0.6)
        sol = solve_apx(inst, "kmb")
        for lp in sol.local_paths:
            req = set(inst.required_internal[lp.cluster_index])
            if len(lp.path) >= 2:
                assert req.isdisjoint({lp.path[0], lp.path[-1]})


def test_determinism():
    inst = gen_euclidean(10, 3, seed=42, internal_fraction=0.4)
    a = solve_apx(inst, "kmb")
    b = solve_apx(inst, "kmb")
    assert a.tree == b.tree
    assert a.cut_edges == b.cut_edges
    assert write_solution(a) == write_solution(b)


def test_singleton_clusters_reduce_to_plain_steiner():
    rng = np.random.default_rng(64)
    for trial in range(15):
        n = int(rng.integers(4, 9))
        g = MetricGraph(brute.random_metric_cost(rng, n))
        k = int(rng.integers(2, min(n - 1, 4) + 1))
        clusters = tuple((v,) for v in range(k))
        inst = Instance(g, clusters, tuple(() for _ in range(k)))
        sol = solve_apx(inst, "exact")
        t = dreyfus_wagner(g, range(k))
        assert sol.total_cost == pytest.approx(tree_cost(g, t), abs=1e-9)
        assert sol.local_cost == 0.0


def test_two_terminal_single_cluster():
    # cheapest connection may or may not route through the Steiner vertex
    g = MetricGraph(np.array([[0.0, 2.0, 1.0], [2.0, 0.0, 1.0], [1.0, 1.0, 0.0]]))
    inst = Instance(g, ((0, 1),), ((),))
    sol = solve_apx(inst, "exact")
    assert sol.total_cost == pytest.approx(2.0)
    res = exact_csistp(inst)
    assert res.cost == pytest.approx(2.0)


def test_bound_holds_against_oracle():
    rng = np.random.default_rng(65)
    for trial in range(30):
        n = int(rng.integers(5, 10))
        k = int(rng.integers(1, 4))
        inst = gen_random_metric(n, k, seed=trial * 13, internal_fraction=0.3)
        res = exact_csistp(inst)
        assert res.found
        for solver in ("kmb", "exact"):
            sol = solve_apx(inst, solver)
            assert sol.total_cost <= sol.bound * res.cost + 1e-9


def test_solution_round_trip(fixture5):
    sol = solve_apx(fixture5, "kmb")
    text = write_solution(sol)
    doc = read_solution(text)
    assert doc["vertices"] == list(sol.tree.vertices)
    assert [tuple(e) for e in doc["edges"]] == list(sol.tree.edges)
    assert [tuple(e) for e in doc["cut_edges"]] == list(sol.cut_edges)
    assert doc["total_cost"] == sol.total_cost
    assert doc["solver"] == "kmb"
    assert doc["bound"] == 6.0


def test_read_solution_rejects_garbage():
    with pytest.raises(SolutionFormatError, match="parse error"):
        read_solution("nope{")
    with pytest.raises(SolutionFormatError, match="missing"):
        read_solution(json.dumps({"vertices": [0]}))
    with pytest.raises(SolutionFormatError):
        read_solution(json.dumps({"vertices": "x", "edges": [], "cut_edges": [], "total_cost": 0}))
