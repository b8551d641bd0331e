"""
Command-line interface.

Subcommands: ``verify``, ``run``, ``bench``, ``leakage`` and ``combos``.
Exit codes: 0 ok, 2 parse error, 3 dimension mismatch, 4 invalid
partitioning, 5 partitioning not scalable, 6 tolerance exceeded.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from typing import Optional

import numpy as np

from .baseline import baseline_fold
from .bench import run_benchmark, write_bench_csv
from .combos import classify_combos
from .core import (
    DatasetPair,
    DimensionError,
    Partitioning,
    PartitionError,
    PreprocessConfig,
    ScalabilityError,
)
from .fast import run_all_folds
from .io import random_problem, read_matrix, write_fold_results
from .leakage import (
    CENTER_X,
    canonical_example,
    leakage_divergence,
    lindgren_centered_xtx,
    mean_zero_example,
)
from .partition import check_scalable, read_partition_file
from .verify import compare_engines

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_PARTITION = 4
EXIT_NOT_SCALABLE = 5
EXIT_TOLERANCE = 6

# shape of the seeded data behind ``leakage --seed``
LEAKAGE_RANDOM_N, LEAKAGE_RANDOM_K, LEAKAGE_RANDOM_P = 60, 4, 5


class CLIError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _config(text: str) -> PreprocessConfig:
    try:
        return PreprocessConfig.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_inputs(sub: argparse.ArgumentParser, random_ok: bool = True, y_required: bool = True) -> None:
    sub.add_argument("--x", dest="x_file", help="feature matrix CSV (rows = samples)")
    sub.add_argument("--y", dest="y_file", help="response matrix CSV (rows = samples)")
    sub.add_argument("--partition", dest="partition_file", help="one 1-based fold label per line")
    if random_ok:
        sub.add_argument(
            "--random", nargs=5, type=int, metavar=("N", "K", "M", "P", "SEED"),
            help="use seeded uniform(0,1) data and a balanced random partitioning",
        )


def _load_inputs(args, y_optional: bool = False) -> tuple[DatasetPair, Partitioning]:
    """Build the dataset and partitioning, mapping failures onto exit codes."""
    if getattr(args, "random", None):
        n, k, m, p, seed = args.random
        if min(n, k, m) < 1:
            raise CLIError(EXIT_PARSE, "--random dimensions must be positive")
        if not 2 <= p <= n:
            raise CLIError(EXIT_PARTITION, f"fold count p={p} must satisfy 2 <= p <= N={n}")
        return random_problem(n, k, m, p, seed)

    if not args.x_file or not args.partition_file or (not args.y_file and not y_optional):
        raise CLIError(EXIT_PARSE, "need --x, --y and --partition, or --random")
    try:
        x = read_matrix(args.x_file)
        y = read_matrix(args.y_file) if args.y_file else None
    except (OSError, ValueError) as exc:
        raise CLIError(EXIT_PARSE, f"cannot read matrix: {exc}") from exc
    if y is None:
        y = np.zeros((x.shape[0], 1))
    try:
        data = DatasetPair(x, y)
    except DimensionError as exc:
        raise CLIError(EXIT_DIMENSION, str(exc)) from exc
    try:
        part = read_partition_file(args.partition_file)
    except PartitionError as exc:
        raise CLIError(EXIT_PARTITION, str(exc)) from exc
    except (OSError, ValueError) as exc:
        raise CLIError(EXIT_PARSE, f"cannot read partition file: {exc}") from exc
    if part.n_rows != data.n_rows:
        raise CLIError(
            EXIT_DIMENSION, f"partition has {part.n_rows} labels but data has {data.n_rows} rows"
        )
    return data, part


def _require_scalable(part: Partitioning) -> None:
    violation = check_scalable(part)
    if violation is not None:
        raise CLIError(EXIT_NOT_SCALABLE, violation.message)


def cmd_verify(args) -> int:
    data, part = _load_inputs(args)
    _require_scalable(part)
    diffs = compare_engines(data, part, n_jobs=args.threads)
    print(f"N={data.n_rows} K={data.n_features} M={data.n_responses} P={part.p} tol={args.tol:.3g}")
    failed = 0
    for cfg, diff in diffs.items():
        ok = diff <= args.tol
        failed += not ok
        print(f"{cfg.label:<14} {diff:.3e}  {'PASS' if ok else 'FAIL'}")
    print(f"{len(diffs) - failed}/{len(diffs)} configurations within tolerance")
    return EXIT_OK if failed == 0 else EXIT_TOLERANCE


def cmd_run(args) -> int:
    data, part = _load_inputs(args)
    if args.config.any_scale:
        _require_scalable(part)
    results = run_all_folds(data, part, args.config, n_jobs=args.threads)
    written = write_fold_results(args.out_dir, results)
    print(f"wrote {len(written)} files to {args.out_dir}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if min(args.n, args.k, args.m) < 1:
        raise CLIError(EXIT_PARSE, "dimensions must be positive")
    if any(not 2 <= p <= args.n for p in args.p_list):
        raise CLIError(EXIT_PARTITION, f"every p must satisfy 2 <= p <= n={args.n}")
    if args.reps < 1:
        raise CLIError(EXIT_PARSE, "--reps must be >= 1")
    records = run_benchmark(
        args.n, args.k, args.m, args.p_list, args.config,
        reps=args.reps, seed=args.seed, engines=args.engines,
    )
    try:
        write_bench_csv(args.out, records)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    for r in records:
        print(f"{r.engine:<9} p={r.p:<7} {r.wall_time:.6f} s")
    return EXIT_OK


def cmd_leakage(args) -> int:
    data, part, fold = canonical_example()
    leaky = lindgren_centered_xtx(data, part, fold)[0, 0]
    proper = baseline_fold(data, part, fold, CENTER_X).xtx_t[0, 0]
    report = leakage_divergence(data, part)
    print(f"canonical example: X = [-1, 1, 4], labels = [1, 1, 2], fold {fold} (training rows 1, 2)")
    print(f"  lindgren centered X^T X: {leaky:.12g}")
    print(f"  proper centered X^T X:   {proper:.12g}")
    print(f"  divergence:              {report.divergence[fold - 1]:.12g}")

    data, part = mean_zero_example()
    print(f"mean-zero example: max divergence {leakage_divergence(data, part).max_divergence:.3e}")

    if args.seed is not None and not (args.x_file or args.random):
        args.random = [LEAKAGE_RANDOM_N, LEAKAGE_RANDOM_K, 1, LEAKAGE_RANDOM_P, args.seed]
    if args.x_file or args.random:
        data, part = _load_inputs(args, y_optional=True)
        report = leakage_divergence(data, part, use_fold_size=args.fold_size)
        print(f"data: N={data.n_rows} K={data.n_features} P={part.p}")
        print(report.to_text(), end="")
    return EXIT_OK


def cmd_combos(args) -> int:
    data, part = _load_inputs(args)
    _require_scalable(part)
    report = classify_combos(data, part, tol=args.tol)
    print(report.to_text(), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvxtx",
        description="Per-fold X^T X and X^T Y with training-partition centering and scaling.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("verify", help="compare fast and baseline engines on all 16 configurations")
    _add_inputs(sub)
    sub.add_argument("--tol", type=float, default=1e-8)
    sub.add_argument("--threads", type=int, default=1)
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser("run", help="write per-fold products and statistics")
    _add_inputs(sub)
    sub.add_argument("--config", type=_config, default=PreprocessConfig())
    sub.add_argument("--out-dir", required=True)
    sub.add_argument("--threads", type=int, default=1)
    sub.set_defaults(func=cmd_run)

    sub = subs.add_parser("bench", help="time both engines over a sweep of fold counts")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--p-list", type=_int_list, required=True, help="e.g. 10,100,1000")
    sub.add_argument("--config", type=_config, default=PreprocessConfig.parse("center+scale"))
    sub.add_argument("--reps", type=int, default=3)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--engines", type=lambda s: s.split(","), default=["baseline", "fast"])
    sub.add_argument("--out", required=True, help="CSV path")
    sub.set_defaults(func=cmd_bench)

    sub = subs.add_parser("leakage", help="show how Lindgren-style centering leaks")
    _add_inputs(sub)
    sub.add_argument(
        "--fold-size", action="store_true",
        help="use the actual validation size instead of N/P in the Lindgren correction",
    )
    sub.add_argument("--seed", type=int, help="also probe seeded uniform(0,1) data (60 x 4, P=5)")
    sub.set_defaults(func=cmd_leakage)

    sub = subs.add_parser("combos", help="classify the 16 preprocessing combinations")
    _add_inputs(sub)
    sub.add_argument("--tol", type=float, default=1e-9)
    sub.set_defaults(func=cmd_combos)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    if getattr(args, "engines", None) and any(e not in ("baseline", "fast") for e in args.engines):
        parser.error("--engines takes baseline and/or fast")
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ScalabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SCALABLE


if __name__ == "__main__":
    sys.exit(main())
