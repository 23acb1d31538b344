"""Ratio experiment harness: generate instances over a grid, solve, compare
against the exact oracle, and emit deterministic CSV.

Wall times are measured and kept on the records but never serialized, so
repeated runs of the same config are byte-identical.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .apx import solve_apx, theoretical_bound
from .instance import gen_euclidean, gen_random_metric
from .oracle import exact_csistp, oracle_limit
from .steiner import get_solver

KINDS = ("euclidean", "random-metric")
RULES = ("lexicographic", "cheapest-pair")

RATIO_EPS = 1e-6

CSV_COLUMNS = (
    "instance_id", "kind", "n", "k", "solver", "endpoint_rule",
    "apx_cost", "oracle_cost", "ratio", "bound", "local_cost", "inter_cost",
)


class BenchConfigError(ValueError):
    """Raised when a bench config document cannot be parsed."""


@dataclass(frozen=True)
class BenchCell:
    kind: str
    n: int
    k: int
    count: int
    steiner_fraction: float = 0.25
    internal_fraction: float = 0.0
    oracle: bool = True


@dataclass(frozen=True)
class ExperimentConfig:
    cells: tuple
    solvers: tuple = ("kmb",)
    endpoint_rules: tuple = ("lexicographic",)
    seed: int = 0
    oracle_limit: int = None


@dataclass(frozen=True)
class RatioRecord:
    instance_id: str
    kind: str
    n: int
    k: int
    solver: str
    endpoint_rule: str
    apx_cost: float
    oracle_cost: float
    ratio: float
    bound: float
    local_cost: float
    inter_cost: float
    wall_time: float


def validate_config(config: ExperimentConfig) -> ExperimentConfig:
    limit = oracle_limit(config.oracle_limit)
    if not config.cells:
        raise ValueError("config has no cells")
    for name in config.solvers:
        get_solver(name)
    for rule in config.endpoint_rules:
        if rule not in RULES:
            raise ValueError(f"unknown endpoint rule '{rule}'")
    for cell in config.cells:
        if cell.kind not in KINDS:
            raise ValueError(f"unknown instance kind '{cell.kind}'")
        if cell.count < 1 or cell.n < 2 or cell.k < 1:
            raise ValueError(f"bad cell n={cell.n} k={cell.k} count={cell.count}")
        if cell.oracle and cell.n > limit:
            raise ValueError("oracle limit exceeded")
    return config


def read_config(text) -> ExperimentConfig:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise BenchConfigError(f"parse error at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict) or "cells" not in doc or not isinstance(doc["cells"], list):
        raise BenchConfigError("config must be an object with a 'cells' array")
    cells = []
    for i, raw in enumerate(doc["cells"]):
        if not isinstance(raw, dict):
            raise BenchConfigError(f"cell {i} must be an object")
        try:
            cells.append(BenchCell(
                kind=raw["kind"], n=int(raw["n"]), k=int(raw["k"]), count=int(raw["count"]),
                steiner_fraction=float(raw.get("steiner_fraction", 0.25)),
                internal_fraction=float(raw.get("internal_fraction", 0.0)),
                oracle=bool(raw.get("oracle", True)),
            ))
        except KeyError as e:
            raise BenchConfigError(f"cell {i} missing field {e}") from None
    config = ExperimentConfig(
        cells=tuple(cells),
        solvers=tuple(doc.get("solvers", ["kmb"])),
        endpoint_rules=tuple(doc.get("endpoint_rules", ["lexicographic"])),
        seed=int(doc.get("seed", 0)),
        oracle_limit=doc.get("oracle_limit"),
    )
    return validate_config(config)


def _gen(cell: BenchCell, seed: int):
    if cell.kind == "euclidean":
        return gen_euclidean(cell.n, cell.k, cell.steiner_fraction, cell.internal_fraction, seed)
    return gen_random_metric(cell.n, cell.k, cell.internal_fraction, seed, cell.steiner_fraction)


def _run_one(config: ExperimentConfig, cell: BenchCell, instance_id: str, seed: int, limit):
    inst = _gen(cell, seed)
    opt = None
    if cell.oracle:
        res = exact_csistp(inst, limit)
        opt = res.cost if res.found else None
    records = []
    violations = []
    for solver in config.solvers:
        for rule in config.endpoint_rules:
            t0 = time.perf_counter()
            sol = solve_apx(inst, solver, rule)
            wall = time.perf_counter() - t0
            bound = theoretical_bound(solver)
            ratio = None
            if cell.oracle:
                if opt is None:
                    violations.append(f"{instance_id}: oracle reports infeasible but solver produced a tree")
                else:
                    ratio = sol.total_cost / opt
                    if ratio > bound + RATIO_EPS:
                        violations.append(
                            f"{instance_id} solver={solver} rule={rule}: ratio {ratio:.9g} exceeds bound {bound:.9g}"
                        )
                    if ratio < 1.0 - RATIO_EPS:
                        violations.append(
                            f"{instance_id} solver={solver} rule={rule}: ratio {ratio:.9g} below 1 (oracle beaten)"
                        )
            records.append(RatioRecord(
                instance_id=instance_id, kind=cell.kind, n=cell.n, k=cell.k,
                solver=solver, endpoint_rule=rule,
                apx_cost=sol.total_cost, oracle_cost=opt, ratio=ratio,
                bound=bound, local_cost=sol.local_cost, inter_cost=sol.inter_cost,
                wall_time=wall,
            ))
    return records, violations


def run_bench(config: ExperimentConfig, jobs: int = 1):
    """Run the grid; returns (records, violations) in deterministic order."""
    validate_config(config)
    limit = oracle_limit(config.oracle_limit)
    tasks = []
    counter = 0
    for cell in config.cells:
        for _ in range(cell.count):
            instance_id = f"{cell.kind}-n{cell.n}-k{cell.k}-i{counter:04d}"
            tasks.append((cell, instance_id, config.seed + counter))
            counter += 1
    records = []
    violations = []
    if jobs <= 1:
        results = [_run_one(config, c, i, s, limit) for c, i, s in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_one, config, c, i, s, limit) for c, i, s in tasks]
            results = [f.result() for f in futures]
    for recs, viols in results:
        records.extend(recs)
        violations.extend(viols)
    return records, violations


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.9g}"


def write_records_csv(records) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        lines.append(",".join([
            r.instance_id, r.kind, str(r.n), str(r.k), r.solver, r.endpoint_rule,
            _fmt(r.apx_cost), _fmt(r.oracle_cost), _fmt(r.ratio), _fmt(r.bound),
            _fmt(r.local_cost), _fmt(r.inter_cost),
        ]))
    return "\n".join(lines) + "\n"


def summarize(records) -> str:
    """Max and mean ratio per (kind, n, k, solver) cell."""
    groups = {}
    for r in records:
        if r.ratio is None:
            continue
        groups.setdefault((r.kind, r.n, r.k, r.solver), []).append(r.ratio)
    lines = ["kind n k solver count max_ratio mean_ratio"]
    for key in sorted(groups):
        vals = groups[key]
        kind, n, k, solver = key
        lines.append(
            f"{kind} {n} {k} {solver} {len(vals)} {max(vals):.9g} {sum(vals) / len(vals):.9g}"
        )
    return "\n".join(lines) + "\n"
