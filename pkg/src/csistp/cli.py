"""Command line front end: gen, solve, verify, bench.

Exit codes: 0 success, 1 domain failure (invalid instance, invalid solution,
bound violation), 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import sys

from .apx import SolutionFormatError, read_solution, solve_apx, write_solution
from .bench import BenchConfigError, read_config, run_bench, summarize, write_records_csv
from .dot import to_dot
from .instance import (
    InstanceFormatError,
    InstanceValidationError,
    gen_euclidean,
    gen_random_metric,
    read_instance,
    write_instance,
)
from .verify import verify_solution

COST_EPS = 1e-6


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_gen(args) -> int:
    if args.kind == "euclidean":
        inst = gen_euclidean(args.n, args.k, args.steiner_fraction, args.internal_fraction, args.seed)
    else:
        inst = gen_random_metric(args.n, args.k, args.internal_fraction, args.seed, args.steiner_fraction)
    _write(args.out, write_instance(inst))
    return 0


def cmd_solve(args) -> int:
    inst = read_instance(_read(args.instance))
    sol = solve_apx(inst, args.solver, args.endpoint_rule)
    _write(args.out, write_solution(sol))
    if args.dot is not None:
        _write(args.dot, to_dot(inst, sol))
    if args.out is not None:
        print(
            f"solved: total_cost {sol.total_cost:.9g} "
            f"(local {sol.local_cost:.9g} + inter {sol.inter_cost:.9g}), "
            f"solver {sol.solver}, bound {sol.bound:g}x"
        )
    return 0


def cmd_verify(args) -> int:
    inst = read_instance(_read(args.instance))
    doc = read_solution(_read(args.solution))
    report = verify_solution(inst, doc["vertices"], doc["edges"], doc.get("cut_edges"), args.mode)
    print(report)
    if not report.ok:
        return 1
    if abs(doc["total_cost"] - report.cost) > COST_EPS:
        print(
            f"error: claimed total_cost {doc['total_cost']} differs from recomputed {report.cost}",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_bench(args) -> int:
    config = read_config(_read(args.config))
    records, violations = run_bench(config, jobs=args.jobs)
    csv = write_records_csv(records)
    _write(args.out, csv)
    summary = summarize(records)
    if args.out is None:
        sys.stderr.write(summary)
    else:
        sys.stdout.write(summary)
    if violations:
        for msg in violations:
            print(f"bound violation: {msg}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csistp",
        description="Clustered selected-internal Steiner trees: generate, solve, verify, benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance file")
    p.add_argument("--kind", choices=("euclidean", "random-metric"), default="euclidean")
    p.add_argument("-n", type=int, required=True, help="vertex count")
    p.add_argument("-k", type=int, required=True, help="cluster count")
    p.add_argument("--steiner-fraction", type=float, default=0.25)
    p.add_argument("--internal-fraction", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--solver", choices=("kmb", "exact"), default="kmb")
    p.add_argument("--endpoint-rule", choices=("lexicographic", "cheapest-pair"), default="lexicographic")
    p.add_argument("--out", default=None, help="solution path (default stdout)")
    p.add_argument("--dot", default=None, help="also write a DOT rendering here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="verify a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--mode", choices=("literal", "strict"), default="literal")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a ratio experiment grid")
    p.add_argument("config")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, SolutionFormatError, BenchConfigError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InstanceValidationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
