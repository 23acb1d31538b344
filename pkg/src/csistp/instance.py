"""Problem instances: terminals partitioned into clusters, per-cluster
required-internal sets, validation, file round-trip, and generators.

An instance is well formed when the clusters are disjoint and nonempty, their
union leaves at least one Steiner vertex, each required-internal set is a
proper subset of its cluster leaving at least two free endpoints (none needed
for singleton clusters), and the cost matrix is metric. Validation reports
violations instead of raising so callers can inspect deliberately broken
instances.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graph import EPS_METRIC, MetricGraph, is_metric, metric_closure

FILE_EXTENSION = ".csistp.json"


class InstanceFormatError(ValueError):
    """Raised when an instance document cannot be parsed."""


class InstanceValidationError(ValueError):
    """Raised when a parsed instance fails validate_instance."""


@dataclass(frozen=True)
class Instance:
    """A CSISTP instance: metric graph, cluster partition, required sets.

    clusters and required_internal are normalized to sorted tuples so equal
    instances compare equal regardless of input order. Construction does not
    validate feasibility; call validate_instance for that.
    """

    graph: MetricGraph
    clusters: tuple
    required_internal: tuple

    def __post_init__(self):
        cl = tuple(tuple(sorted(int(v) for v in c)) for c in self.clusters)
        rq = tuple(tuple(sorted(int(v) for v in r)) for r in self.required_internal)
        if len(rq) != len(cl):
            raise ValueError("required_internal must have one entry per cluster")
        object.__setattr__(self, "clusters", cl)
        object.__setattr__(self, "required_internal", rq)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return len(self.clusters)

    @property
    def terminals(self) -> tuple:
        return tuple(sorted(v for c in self.clusters for v in c))

    @property
    def steiner_vertices(self) -> tuple:
        term = set(self.terminals)
        return tuple(v for v in range(self.n) if v not in term)

    def free_endpoints(self, i: int) -> tuple:
        req = set(self.required_internal[i])
        return tuple(v for v in self.clusters[i] if v not in req)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(self.violations)


def validate_instance(inst: Instance) -> ValidationReport:
    """Check instance well-formedness; violations come back as messages."""
    bad = []
    n = inst.n
    seen = {}
    for i, cluster in enumerate(inst.clusters):
        if not cluster:
            bad.append(f"cluster {i} is empty")
        for v in cluster:
            if not 0 <= v < n:
                bad.append(f"cluster {i} vertex {v} out of range")
            elif v in seen:
                bad.append(f"clusters overlap at vertex {v}")
            else:
                seen[v] = i
    if len(seen) == n and not bad:
        bad.append("terminals cover every vertex, no Steiner vertex remains")
    for i, req in enumerate(inst.required_internal):
        cluster = set(inst.clusters[i])
        for v in req:
            if v not in cluster:
                bad.append(f"required internal vertex {v} not in cluster {i}")
        if len(cluster) == 1 and req:
            bad.append(f"cluster {i} is a singleton with a required internal vertex")
        elif len(cluster) >= 2 and len(cluster) - len(set(req) & cluster) < 2:
            bad.append(f"cluster {i} has fewer than 2 free endpoints")
    if not is_metric(inst.graph):
        bad.append("graph violates the triangle inequality")
    return ValidationReport(ok=not bad, violations=tuple(bad))


def _round12(x: float) -> float:
    # 12 significant digits: stable under write -> read -> write
    return float(f"{float(x):.12g}")


def _round12_matrix(a) -> np.ndarray:
    # entrywise, so symmetric input stays exactly symmetric
    return np.array([[_round12(x) for x in row] for row in np.asarray(a, dtype=np.float64)])


def write_instance(inst: Instance) -> str:
    """Serialize to the instance document format (strict lower triangle)."""
    c = inst.graph.cost
    tri = [_round12(c[i, j]) for i in range(1, inst.n) for j in range(i)]
    doc = {
        "n": inst.n,
        "costs": tri,
        "clusters": [list(cl) for cl in inst.clusters],
        "required_internal": [list(r) for r in inst.required_internal],
    }
    return json.dumps(doc, indent=2) + "\n"


def read_instance(text, validate: bool = True) -> Instance:
    """Parse an instance document.

    costs may be the strict lower triangle (n(n-1)/2 values, row major) or a
    full n x n matrix; the latter must be symmetric. Parse problems raise
    InstanceFormatError, semantic problems InstanceValidationError.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"parse error at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be an object")
    for field in ("n", "costs", "clusters", "required_internal"):
        if field not in doc:
            raise InstanceFormatError(f"missing field '{field}'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise InstanceFormatError("field 'n' must be a positive integer")
    costs = doc["costs"]
    if isinstance(costs, list) and costs and all(isinstance(row, list) for row in costs):
        costs = [x for row in costs for x in row]
    if not isinstance(costs, list) or not all(isinstance(x, (int, float)) for x in costs):
        raise InstanceFormatError("field 'costs' must be a list of numbers")
    tri_len = n * (n - 1) // 2
    mat = np.zeros((n, n), dtype=np.float64)
    if len(costs) == tri_len:
        pos = 0
        for i in range(1, n):
            for j in range(i):
                mat[i, j] = mat[j, i] = costs[pos]
                pos += 1
    elif len(costs) == n * n:
        mat = np.array(costs, dtype=np.float64).reshape(n, n)
    else:
        raise InstanceFormatError(
            f"field 'costs' has {len(costs)} entries, expected {tri_len} (lower triangle) or {n * n} (full matrix)"
        )
    for field in ("clusters", "required_internal"):
        val = doc[field]
        if not isinstance(val, list) or not all(
            isinstance(c, list) and all(isinstance(v, int) for v in c) for c in val
        ):
            raise InstanceFormatError(f"field '{field}' must be a list of integer lists")
    if len(doc["required_internal"]) != len(doc["clusters"]):
        raise InstanceFormatError("field 'required_internal' must have one entry per cluster")
    try:
        g = MetricGraph(mat)
    except ValueError as e:
        raise InstanceFormatError(str(e)) from e
    inst = Instance(g, tuple(map(tuple, doc["clusters"])), tuple(map(tuple, doc["required_internal"])))
    if validate:
        report = validate_instance(inst)
        if not report.ok:
            raise InstanceValidationError(str(report))
    return inst


def _pick_required(rng, cluster, internal_fraction):
    # keep two free endpoints (and none at all in singletons)
    size = len(cluster)
    want = min(int(internal_fraction * size), size - 2)
    if want <= 0:
        return ()
    chosen = rng.choice(np.array(cluster, dtype=np.int64), size=want, replace=False)
    return tuple(sorted(int(v) for v in chosen))


def _split_terminals(n, k, steiner_fraction, rng):
    n_steiner = max(1, int(steiner_fraction * n))
    n_term = n - n_steiner
    if n_term < k:
        raise ValueError(f"cannot form {k} nonempty clusters from {n_term} terminals")
    steiner = sorted(int(v) for v in rng.choice(n, size=n_steiner, replace=False))
    terminals = [v for v in range(n) if v not in set(steiner)]
    return terminals


def gen_euclidean(n: int, k: int, steiner_fraction: float = 0.25,
                  internal_fraction: float = 0.0, seed: int = 0) -> Instance:
    """Random points in the unit square; clusters by nearest centroid.

    Deterministic per seed. Costs are rounded to 12 significant digits so the
    file round-trip is exact.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    cost = _round12_matrix(np.sqrt((diff * diff).sum(axis=2)))
    np.fill_diagonal(cost, 0.0)
    terminals = _split_terminals(n, k, steiner_fraction, rng)
    centroids = sorted(int(v) for v in rng.choice(np.array(terminals), size=k, replace=False))
    groups = [[] for _ in range(k)]
    for v in terminals:
        d = [cost[v, c] for c in centroids]
        groups[int(np.argmin(d))].append(v)
    # centroid terminals sit at distance 0 from themselves, but keep the
    # rebalancing rule anyway: feed empty clusters from the nearest donor
    for i in range(k):
        while not groups[i]:
            donors = [(cost[v, centroids[i]], v, j) for j in range(k)
                      if len(groups[j]) > 1 for v in groups[j]]
            _, v, j = min(donors)
            groups[j].remove(v)
            groups[i].append(v)
    clusters = tuple(tuple(sorted(g)) for g in groups)
    required = tuple(_pick_required(rng, c, internal_fraction) for c in clusters)
    return Instance(MetricGraph(cost), clusters, required)


def gen_random_metric(n: int, k: int, internal_fraction: float = 0.0,
                      seed: int = 0, steiner_fraction: float = 0.25) -> Instance:
    """Uniform costs in [1, 10] replaced by their shortest-path closure."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    raw = rng.uniform(1.0, 10.0, size=(n, n))
    raw = np.triu(raw, 1)
    raw = raw + raw.T
    closed, _ = metric_closure(MetricGraph(raw))
    cost = _round12_matrix(closed.cost)
    np.fill_diagonal(cost, 0.0)
    terminals = _split_terminals(n, k, steiner_fraction, rng)
    labels = rng.integers(0, k, size=len(terminals))
    groups = [[] for _ in range(k)]
    for v, lab in zip(terminals, labels):
        groups[int(lab)].append(v)
    for i in range(k):
        while not groups[i]:
            j = max(range(k), key=lambda t: (len(groups[t]), -t))
            groups[i].append(groups[j].pop(0))
    clusters = tuple(tuple(sorted(g)) for g in groups)
    required = tuple(_pick_required(rng, c, internal_fraction) for c in clusters)
    return Instance(MetricGraph(cost), clusters, required)
