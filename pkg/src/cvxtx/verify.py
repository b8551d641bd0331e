"""Fast-versus-baseline agreement checks."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .baseline import baseline_fold_products
from .combos import enumerate_configs
from .core import DatasetPair, FoldResult, Partitioning, PreprocessConfig
from .fast import run_all_folds


def max_relative_difference(
    candidate: Sequence[FoldResult], reference: Sequence[FoldResult]
) -> float:
    """
    Largest entrywise gap between two fold-result sequences.

    Each entry's absolute difference is divided by the largest magnitude in
    the reference matrix it belongs to, so entries that happen to be near zero
    are judged on the scale of their matrix rather than their own.
    """
    if len(candidate) != len(reference):
        raise ValueError("fold counts differ")
    worst = 0.0
    for c, r in zip(candidate, reference):
        if c.fold_id != r.fold_id:
            raise ValueError(f"fold {c.fold_id} compared against fold {r.fold_id}")
        for a, b in ((c.xtx_t, r.xtx_t), (c.xty_t, r.xty_t)):
            scale = np.max(np.abs(b))
            gap = np.max(np.abs(a - b))
            if scale > 0:
                gap /= scale
            worst = max(worst, float(gap))
    return worst


def compare_engines(
    data: DatasetPair,
    part: Partitioning,
    configs: Iterable[PreprocessConfig] | None = None,
    n_jobs: int = 1,
) -> dict[PreprocessConfig, float]:
    """Max relative difference between the engines for each configuration (all 16 by default)."""
    if configs is None:
        configs = enumerate_configs()
    return {
        cfg: max_relative_difference(
            run_all_folds(data, part, cfg, n_jobs),
            baseline_fold_products(data, part, cfg, n_jobs),
        )
        for cfg in configs
    }
