"""Command-line front end.

Subcommands:
    analytic    emit the closed-form query-count table (CSV or JSON)
    montecarlo  run a strategy and self-check the mean against its closed form
    circuit     export a compiled circuit as JSON
    verify      run the full invariant suite

Exit codes: 0 success, 1 usage or validation error, 2 I/O error,
3 statistical check failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import analytics, circuits, strategies, verify

ANALYTIC_COLUMNS = ("N", "G_C", "G_T", "G_T_full", "G_Q", "k_opt", "G_MUD", "G_MUD_full")

CIRCUIT_KINDS = ("prep", "srm", "paircheck", "graph")


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        # newline="" keeps the LF endings byte-identical on every platform
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _analytic_row(N: int) -> dict:
    plan = analytics.g_grover_opt(N)
    return {
        "N": N,
        "G_C": analytics.g_classical(N),
        "G_T": analytics.g_teststate(N),
        "G_T_full": analytics.g_teststate_fullspace(N) if N >= 5 else None,
        "G_Q": plan.queries,
        "k_opt": plan.k_opt,
        "G_MUD": analytics.g_mud(N) if N >= 5 else None,
        "G_MUD_full": analytics.g_mud_fullspace(N) if N >= 5 else None,
    }


def _render_analytic(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(ANALYTIC_COLUMNS)
    for row in rows:
        writer.writerow(
            ""
            if row[key] is None
            else (str(row[key]) if isinstance(row[key], int) else repr(row[key]))
            for key in ANALYTIC_COLUMNS
        )
    return buffer.getvalue()


def _cmd_analytic(args: argparse.Namespace) -> int:
    n_max = args.n if args.n_max is None else args.n_max
    if args.n < 4:
        raise ValueError(f"the table starts at N=4, got --n {args.n}")
    if n_max < args.n:
        raise ValueError(f"--n-max {n_max} is below --n {args.n}")
    if args.step < 1:
        raise ValueError(f"--step must be positive, got {args.step}")
    rows = [_analytic_row(N) for N in range(args.n, n_max + 1, args.step)]
    _write(_render_analytic(rows, args.format), args.out)
    return 0


def _cmd_montecarlo(args: argparse.Namespace) -> int:
    if args.k is not None and args.strategy != "grover":
        raise ValueError("--k only applies to the grover strategy")
    k = None
    if args.strategy == "grover":
        k = args.k if args.k is not None else analytics.g_grover_opt(args.n).k_opt
    stats = strategies.estimate(
        args.strategy, args.n, args.trials, args.seed, k=k, workers=args.workers
    )
    analytic = verify.closed_form(args.strategy, args.n, k)
    if stats.stderr > 0.0:
        z = (stats.mean - analytic) / stats.stderr
    else:
        z = 0.0 if stats.mean == analytic else math.inf
    record = {
        "strategy": stats.strategy,
        "N": stats.N,
        "trials": stats.trials,
        "seed": stats.seed,
    }
    if k is not None:
        record["k"] = k
    record.update(mean=stats.mean, stderr=stats.stderr, analytic=analytic, z_score=z)
    _write(json.dumps(record, indent=2) + "\n", args.out)
    return 0 if abs(z) <= 3.0 else 3


def _cmd_circuit(args: argparse.Namespace) -> int:
    if args.kind == "prep":
        circuit = circuits.compile_teststate_prep(args.n)
    elif args.kind == "srm":
        circuit = circuits.compile_srm_unitary(args.n)
    elif args.kind == "paircheck":
        circuit = circuits.compile_pair_check(args.n, args.j, args.pivot)
    else:
        circuit = circuits.compile_graph_prep(args.n)
    _write(json.dumps(circuits.export(circuit), indent=2) + "\n", args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run_all(trials=args.trials, seed=args.seed, workers=args.workers)
    for result in results:
        print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    return 0 if all(result.passed for result in results) else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oraclesearch",
        description="oracle-identification strategies: analytic tables, Monte Carlo, circuits",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    analytic = sub.add_parser("analytic", help="emit the closed-form query-count table")
    analytic.add_argument("--n", type=int, default=4, help="first table row (default 4)")
    analytic.add_argument("--n-max", type=int, default=None, help="last table row (default --n)")
    analytic.add_argument("--step", type=int, default=1, help="row spacing (default 1)")
    analytic.add_argument("--format", choices=("csv", "json"), default="csv")
    analytic.add_argument("--out", default=None, help="output path (default stdout)")
    analytic.set_defaults(func=_cmd_analytic)

    mc = sub.add_parser("montecarlo", help="run a strategy and compare to its closed form")
    mc.add_argument("--strategy", required=True, choices=strategies.STRATEGIES)
    mc.add_argument("--n", type=int, required=True, help="number of candidates N")
    mc.add_argument("--trials", type=int, default=100_000)
    mc.add_argument("--seed", type=int, required=True, help="base seed (mandatory)")
    mc.add_argument("--k", type=int, default=None, help="Grover cycle length (default optimal)")
    mc.add_argument("--workers", type=int, default=1)
    mc.add_argument("--out", default=None, help="output path (default stdout)")
    mc.set_defaults(func=_cmd_montecarlo)

    circuit = sub.add_parser("circuit", help="export a compiled circuit as JSON")
    circuit.add_argument("kind", choices=CIRCUIT_KINDS)
    circuit.add_argument("--n", type=int, required=True, help="data-register width in qubits")
    circuit.add_argument("--j", type=int, default=0, help="paircheck: candidate index (default 0)")
    circuit.add_argument("--pivot", type=int, default=1, help="paircheck: pivot qubit (default 1)")
    circuit.add_argument("--out", default=None, help="output path (default stdout)")
    circuit.set_defaults(func=_cmd_circuit)

    check = sub.add_parser("verify", help="run the full invariant suite")
    check.add_argument("--trials", type=int, default=20_000, help="Monte Carlo depth per check")
    check.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    check.add_argument("--workers", type=int, default=1)
    check.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; fold usage into 1
        return 0 if not exc.code else 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
