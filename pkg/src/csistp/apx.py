"""The clustered selected-internal solver.

Pipeline: per-cluster MST, Hamiltonian path in its cube between two free
terminals, cluster contraction, a Steiner subroutine on the quotient, then
expansion of every quotient tree edge back to original endpoints. The result
costs at most (solver ratio + 4) times the optimum; the k-1 expanded edges
crossing region boundaries of the quotient tree are the witness cut.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import Tree
from .instance import Instance, InstanceValidationError, validate_instance
from .local_trees import build_local_path
from .quotient import contract_clusters, expand_edge
from .steiner import SteinerSolver, get_solver
from .verify import spread_regions


class SolutionFormatError(ValueError):
    """Raised when a solution document cannot be parsed."""


@dataclass(frozen=True)
class ClusteredSolution:
    tree: Tree
    local_paths: tuple
    cut_edges: tuple
    local_cost: float
    inter_cost: float
    total_cost: float
    solver: str
    bound: float


def theoretical_bound(solver) -> float:
    """Guaranteed approximation factor: subroutine ratio plus 4."""
    if isinstance(solver, str):
        solver = get_solver(solver)
    return solver.ratio + 4.0


def solve_apx(inst: Instance, solver="kmb", endpoint_rule: str = "lexicographic") -> ClusteredSolution:
    """Run the full approximation pipeline on a validated instance."""
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceValidationError(str(report))
    if isinstance(solver, str):
        solver = get_solver(solver)
    if not isinstance(solver, SteinerSolver):
        raise ValueError("solver must be a name or a SteinerSolver")
    g = inst.graph
    k = inst.k

    locals_ = tuple(build_local_path(g, inst, i, endpoint_rule) for i in range(k))

    quotient = contract_clusters(g, inst.clusters)
    inter = solver.solve(quotient.graph, range(k))

    inter_edges = []
    inter_cost = 0.0
    for e in inter.edges:
        u, v = expand_edge(quotient, e)
        inter_edges.append((min(u, v), max(u, v)))
        inter_cost += float(quotient.graph.cost[e[0], e[1]])

    region = spread_regions(inter.adjacency(), {i: i for i in range(k)})
    cut_edges = tuple(
        sorted(
            tuple(sorted(expand_edge(quotient, e)))
            for e in inter.edges
            if region[e[0]] != region[e[1]]
        )
    )
    if len(cut_edges) != k - 1:
        raise AssertionError(f"expected {k - 1} cut edges, got {len(cut_edges)}")

    vertices = set()
    edges = []
    local_cost = 0.0
    for lp in locals_:
        vertices.update(lp.path)
        edges.extend(zip(lp.path, lp.path[1:]))
        local_cost += lp.cost
    for x in inter.vertices:
        kind, orig = quotient.origin[x]
        if kind == "steiner":
            vertices.add(orig)
    edges.extend(inter_edges)
    tree = Tree(tuple(vertices), tuple(edges))

    return ClusteredSolution(
        tree=tree,
        local_paths=locals_,
        cut_edges=cut_edges,
        local_cost=local_cost,
        inter_cost=inter_cost,
        total_cost=local_cost + inter_cost,
        solver=solver.name,
        bound=theoretical_bound(solver),
    )


def solution_to_document(sol: ClusteredSolution) -> dict:
    return {
        "vertices": list(sol.tree.vertices),
        "edges": [list(e) for e in sol.tree.edges],
        "cut_edges": [list(e) for e in sol.cut_edges],
        "local_cost": sol.local_cost,
        "inter_cost": sol.inter_cost,
        "total_cost": sol.total_cost,
        "solver": sol.solver,
        "bound": sol.bound,
    }


def write_solution(sol: ClusteredSolution) -> str:
    return json.dumps(solution_to_document(sol), indent=2) + "\n"


def read_solution(text) -> dict:
    """Parse a solution document into a plain dict (no graph context here)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SolutionFormatError(f"parse error at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise SolutionFormatError("solution document must be an object")
    for field in ("vertices", "edges", "cut_edges", "total_cost"):
        if field not in doc:
            raise SolutionFormatError(f"missing field '{field}'")
    if not isinstance(doc["vertices"], list) or not all(isinstance(v, int) for v in doc["vertices"]):
        raise SolutionFormatError("field 'vertices' must be a list of integers")
    for field in ("edges", "cut_edges"):
        val = doc[field]
        if not isinstance(val, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)
            for e in val
        ):
            raise SolutionFormatError(f"field '{field}' must be a list of vertex pairs")
    if not isinstance(doc["total_cost"], (int, float)):
        raise SolutionFormatError("field 'total_cost' must be a number")
    return doc
