"""Batch command-line front end.

Subcommands: ``family`` (build a named family and print its size), ``verify``
(run the randomized oracle-equivalence suite), ``bench`` (run one quantum
benchmark and print its metrics row), ``sample`` (draw assignments and print
a histogram).  Output is CSV by default; JSON mirrors it field for field.
Identical argv and seed produce byte-identical output except for the
wall_seconds field, which is the single timing-dependent column.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from random import Random

from .analysis import sample as draw_sample
from .bench import metrics_csv_header, metrics_csv_row, run_benchmark
from .builders import anti_diagonal, equality_relation, hadamard_family
from .core import Manager, size_metrics, total_states
from .errors import TiddError
from .oracle import run_equivalence_suite

DEFAULT_ORACLE_MAX_VARS = 16
MAX_ANTI_DIAGONAL = 8  # the n=16 diagram needs ~2^32 table entries


def _oracle_cap() -> int:
    raw = os.environ.get("TIDD_ORACLE_MAX_VARS", "")
    try:
        return int(raw) if raw else DEFAULT_ORACLE_MAX_VARS
    except ValueError:
        return DEFAULT_ORACLE_MAX_VARS


def _emit(fmt: str, header: list[str], row: list) -> None:
    if fmt == "json":
        print(json.dumps(dict(zip(header, row))))
    else:
        print(",".join(header))
        print(",".join(str(x) for x in row))


def _build_family(mgr: Manager, kind: str, n: int):
    if kind == "hadamard":
        return hadamard_family(mgr, n)
    if kind == "eq":
        return equality_relation(mgr, n)
    if n > MAX_ANTI_DIAGONAL:
        raise TiddError(
            f"anti-diagonal family is desk-scale only (n <= {MAX_ANTI_DIAGONAL})"
        )
    return anti_diagonal(mgr, n)


def _cmd_family(args) -> int:
    mgr = Manager()
    t = _build_family(mgr, args.kind, args.n)
    report = size_metrics(t)
    _emit(
        args.format,
        ["kind", "n", "states", "nodes", "edges", "total"],
        [args.kind, args.n, total_states(t), report.nodes, report.edges, report.total],
    )
    return 0


def _cmd_verify(args) -> int:
    cap = _oracle_cap()
    if args.vars > cap:
        print(f"error: --vars {args.vars} exceeds oracle cap {cap}", file=sys.stderr)
        return 2
    mgr = Manager()
    passed, failed = run_equivalence_suite(mgr, args.vars, args.cases, args.seed)
    _emit(
        args.format,
        ["vars", "cases", "seed", "passed", "failed"],
        [args.vars, args.cases, args.seed, passed, failed],
    )
    return 1 if failed else 0


def _cmd_bench(args) -> int:
    mgr = Manager()
    _, metrics = run_benchmark(mgr, args.algo, args.qubits, args.seed)
    if args.format == "json":
        header = metrics_csv_header().split(",")
        row = metrics_csv_row(args.algo, args.qubits, args.seed, metrics).split(",")
        print(json.dumps(dict(zip(header, row))))
    else:
        print(metrics_csv_header())
        print(metrics_csv_row(args.algo, args.qubits, args.seed, metrics))
    return 0


def _cmd_sample(args) -> int:
    mgr = Manager()
    t = _build_family(mgr, args.kind, args.n)
    rng = Random(args.seed)
    histogram: dict[str, int] = {}
    for _ in range(args.shots):
        bits = "".join(str(b) for b in draw_sample(t, rng))
        histogram[bits] = histogram.get(bits, 0) + 1
    rows = sorted(histogram.items())
    if args.format == "json":
        print(json.dumps({bits: count for bits, count in rows}))
    else:
        print("assignment,count")
        for bits, count in rows:
            print(f"{bits},{count}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tidd", description="decision-diagram families, verification, benchmarks"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="build a family and print its size")
    p.add_argument("--kind", choices=("hadamard", "eq", "hn"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=_cmd_family)

    p = sub.add_parser("verify", help="run the oracle equivalence suite")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("bench", help="run one quantum benchmark")
    p.add_argument("--algo", choices=("ghz", "bv", "dj"), required=True)
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("sample", help="sample assignments from a family")
    p.add_argument("--kind", choices=("eq", "hn"), default="eq")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shots", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=_cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (TiddError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
