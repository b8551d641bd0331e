"""Flat-file formats: headerless CSV matrices, fold results, and seeded synthetic data."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path
from typing import Union

import numpy as np

from .core import DatasetPair, FloatArray, FoldResult
from .partition import random_partitioning

PathLike = Union[str, Path]

# 17 significant digits round-trip every float64 exactly.
FLOAT_FMT = "%.17g"


def read_matrix(path: PathLike) -> FloatArray:
    """Read a headerless comma-separated matrix, one sample per row."""
    arr = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    return arr


def write_matrix(path: PathLike, a: np.ndarray) -> None:
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    with open(path, "w", newline="\n") as fh:
        for row in a:
            fh.write(",".join(FLOAT_FMT % v for v in row))
            fh.write("\n")


def write_vector_row(fh, fold: int, name: str, values) -> None:
    fh.write(f"{fold},{name}," + ",".join(FLOAT_FMT % v for v in values) + "\n")


def write_fold_results(out_dir: PathLike, results: Sequence[FoldResult]) -> list[Path]:
    """
    Write ``fold_<p>_xtx.csv``, ``fold_<p>_xty.csv`` and ``fold_stats.csv``.

    Each line of the stats file is ``fold,name,values...`` with ``name`` one
    of ``n_train``, ``n_val``, ``mean_x``, ``mean_y``, ``std_x``, ``std_y``.
    Statistics the configuration did not use are omitted.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for r in results:
        for name, mat in (("xtx", r.xtx_t), ("xty", r.xty_t)):
            path = out / f"fold_{r.fold_id}_{name}.csv"
            write_matrix(path, mat)
            written.append(path)
    stats_path = out / "fold_stats.csv"
    with open(stats_path, "w", newline="\n") as fh:
        for r in results:
            s = r.stats
            fh.write(f"{r.fold_id},n_train,{s.n_train}\n")
            fh.write(f"{r.fold_id},n_val,{s.n_val}\n")
            for name, vec in (
                ("mean_x", s.mean_x_t),
                ("mean_y", s.mean_y_t),
                ("std_x", s.std_x_t),
                ("std_y", s.std_y_t),
            ):
                if vec is not None:
                    write_vector_row(fh, r.fold_id, name, vec)
    written.append(stats_path)
    return written


def random_dataset(n: int, k: int, m: int, seed: int) -> DatasetPair:
    """
    Uniform(0, 1) X (n x k) then Y (n x m) from ``numpy.random.default_rng(seed)`` (PCG64).
    """
    rng = np.random.default_rng(seed)
    x = rng.random((n, k))
    y = rng.random((n, m))
    return DatasetPair(x, y)


def random_problem(n: int, k: int, m: int, p: int, seed: int):
    """
    Seeded dataset plus a balanced random partitioning into ``p`` folds.

    X, Y and the fold permutation are drawn in that order from one PCG64
    stream, so the triple is fully determined by ``seed``.
    """
    rng = np.random.default_rng(seed)
    x = rng.random((n, k))
    y = rng.random((n, m))
    return DatasetPair(x, y), random_partitioning(n, p, rng)
