"""Wall-clock comparison of the two engines over a sweep of fold counts."""

from __future__ import annotations

import csv
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .baseline import baseline_fold_products
from .core import DatasetPair, Partitioning, PreprocessConfig
from .fast import run_all_folds
from .io import random_dataset
from .partition import random_partitioning

ENGINES: dict[str, Callable] = {
    "baseline": baseline_fold_products,
    "fast": run_all_folds,
}

CSV_HEADER = ("engine", "config", "n", "k", "m", "p", "wall_time", "reps")


@dataclass(frozen=True)
class BenchRecord:
    engine: str
    config: PreprocessConfig
    n: int
    k: int
    m: int
    p: int
    wall_time: float
    repetitions: int

    def row(self) -> tuple:
        return (
            self.engine, self.config.label, self.n, self.k, self.m, self.p,
            f"{self.wall_time:.9f}", self.repetitions,
        )


def time_engine(
    engine: str, data: DatasetPair, part: Partitioning, cfg: PreprocessConfig, reps: int = 3
) -> float:
    """Fastest of ``reps`` runs, in seconds, on the monotonic clock."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    fn = ENGINES[engine]
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        fn(data, part, cfg)
        best = min(best, time.perf_counter() - start)
    return best


def run_benchmark(
    n: int,
    k: int,
    m: int,
    p_list: Sequence[int],
    cfg: PreprocessConfig,
    reps: int = 3,
    seed: int = 0,
    engines: Iterable[str] = ("baseline", "fast"),
) -> list[BenchRecord]:
    """
    Time each engine for each fold count on one seeded dataset.

    Partitionings are balanced random assignments seeded from ``seed + p``.
    Both engines run once untimed first so one-off compilation is excluded.
    """
    if min(n, k, m) < 1:
        raise ValueError("dimensions must be positive")
    if any(not 2 <= p <= n for p in p_list):
        raise ValueError(f"every p must satisfy 2 <= p <= n={n}")
    engines = tuple(engines)
    data = random_dataset(n, k, m, seed)
    if n >= 4:
        warm = random_partitioning(4, 2, seed)
        warm_data = DatasetPair(data.x[:4], data.y[:4])
        for engine in engines:
            ENGINES[engine](warm_data, warm, cfg)

    records = []
    for p in p_list:
        part = random_partitioning(n, p, seed + p)
        for engine in engines:
            wall = time_engine(engine, data, part, cfg, reps)
            records.append(BenchRecord(engine, cfg, n, k, m, p, wall, reps))
    return records


def write_bench_csv(path: Union[str, Path], records: Sequence[BenchRecord]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(r.row())
