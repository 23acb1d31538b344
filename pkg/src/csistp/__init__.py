"""Clustered selected-internal Steiner tree toolkit.

Builds approximate clustered trees on metric graphs, verifies them, and
measures approximation ratios against a brute-force oracle.
"""

from .apx import (
    ClusteredSolution,
    SolutionFormatError,
    read_solution,
    solution_to_document,
    solve_apx,
    theoretical_bound,
    write_solution,
)
from .bench import (
    BenchCell,
    BenchConfigError,
    ExperimentConfig,
    RatioRecord,
    read_config,
    run_bench,
    summarize,
    write_records_csv,
)
from .dot import to_dot
from .graph import (
    EPS_METRIC,
    MetricGraph,
    PathTable,
    Tree,
    induced_subgraph,
    is_metric,
    metric_closure,
    prune_leaves,
    tree_cost,
)
from .instance import (
    FILE_EXTENSION,
    Instance,
    InstanceFormatError,
    InstanceValidationError,
    ValidationReport,
    gen_euclidean,
    gen_random_metric,
    read_instance,
    validate_instance,
    write_instance,
)
from .local_trees import LocalPath, build_local_path, cube_ham_path, path_cost, prim_mst
from .oracle import (
    DEFAULT_ORACLE_LIMIT,
    OracleResult,
    exact_csistp,
    exact_cstp,
    oracle_limit,
)
from .quotient import QuotientGraph, contract_clusters
from .steiner import (
    DW_MAX_TERMINALS,
    SOLVERS,
    SteinerSolver,
    dreyfus_wagner,
    get_solver,
    kmb_steiner,
)
from .verify import (
    VerificationReport,
    check_clustered,
    check_clustered_bruteforce,
    check_internal,
    cut_is_valid,
    minimal_subtree,
    verify_solution,
)

__version__ = "0.1.0"

__all__ = [
    "BenchCell",
    "BenchConfigError",
    "ClusteredSolution",
    "DEFAULT_ORACLE_LIMIT",
    "DW_MAX_TERMINALS",
    "EPS_METRIC",
    "ExperimentConfig",
    "FILE_EXTENSION",
    "Instance",
    "InstanceFormatError",
    "InstanceValidationError",
    "LocalPath",
    "MetricGraph",
    "OracleResult",
    "PathTable",
    "QuotientGraph",
    "RatioRecord",
    "SOLVERS",
    "SolutionFormatError",
    "SteinerSolver",
    "Tree",
    "ValidationReport",
    "VerificationReport",
    "build_local_path",
    "check_clustered",
    "check_clustered_bruteforce",
    "check_internal",
    "contract_clusters",
    "cube_ham_path",
    "cut_is_valid",
    "dreyfus_wagner",
    "exact_csistp",
    "exact_cstp",
    "gen_euclidean",
    "gen_random_metric",
    "get_solver",
    "induced_subgraph",
    "is_metric",
    "kmb_steiner",
    "metric_closure",
    "minimal_subtree",
    "oracle_limit",
    "path_cost",
    "prim_mst",
    "prune_leaves",
    "read_config",
    "read_instance",
    "read_solution",
    "run_bench",
    "solution_to_document",
    "solve_apx",
    "summarize",
    "theoretical_bound",
    "to_dot",
    "tree_cost",
    "validate_instance",
    "verify_solution",
    "write_instance",
    "write_records_csv",
    "write_solution",
    "__version__",
]
