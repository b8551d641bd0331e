"""
Reference engine: rebuild every training partition explicitly.

For each fold the training rows are gathered, centered and scaled with their
own statistics, and multiplied out. The cost grows linearly with the number of
folds. Nothing is cached across folds; this engine is the correctness oracle
for :mod:`cvxtx.fast`.
"""

from __future__ import annotations

import numpy as np

from ._exec import fold_ids, map_folds
from .core import (
    DatasetPair,
    FloatArray,
    FoldResult,
    FoldStats,
    Partitioning,
    PreprocessConfig,
    ScalabilityError,
)
from .partition import check_scalable


def sample_std(block: FloatArray) -> FloatArray:
    """
    Bessel-corrected column standard deviation with zeros replaced by 1.

    A column counts as zero-variance exactly when all of its entries are equal.
    Testing the values directly avoids the case where a rounded mean leaves
    tiny identical residuals and a spurious nonzero deviation.
    """
    n = block.shape[0]
    mean = block.mean(axis=0)
    resid = block - mean
    std = np.sqrt(np.einsum("ij,ij->j", resid, resid) / (n - 1))
    constant = np.all(block == block[0], axis=0)
    std[constant] = 0.0
    std[std == 0.0] = 1.0
    return std


def _preprocess(block: FloatArray, center: bool, scale: bool):
    mean = std = None
    if center or scale:
        mean = block.mean(axis=0)
    if scale:
        std = sample_std(block)
    if center:
        block = block - mean
    if scale:
        block = block / std
    return block, mean, std


def baseline_fold(
    data: DatasetPair, part: Partitioning, fold: int, cfg: PreprocessConfig
) -> FoldResult:
    """Products for a single fold (1-based ``fold``) by explicit submatrix extraction."""
    train = part.labels != fold
    x_t = data.x[train]
    y_t = data.y[train]
    n_train = x_t.shape[0]
    if cfg.any_scale and n_train < 2:
        raise ScalabilityError(f"fold {fold} has {n_train} training row(s); scaling needs 2")

    x_t, mean_x, std_x = _preprocess(x_t, cfg.center_x, cfg.scale_x)
    y_t, mean_y, std_y = _preprocess(y_t, cfg.center_y, cfg.scale_y)
    # Means of the untouched side are still reported when the other side uses them.
    if cfg.any_center or cfg.any_scale:
        if mean_x is None:
            mean_x = data.x[train].mean(axis=0)
        if mean_y is None:
            mean_y = data.y[train].mean(axis=0)

    stats = FoldStats(
        n_train=n_train,
        n_val=part.n_rows - n_train,
        mean_x_t=mean_x,
        mean_y_t=mean_y,
        std_x_t=std_x,
        std_y_t=std_y,
    )
    return FoldResult(fold, x_t.T @ x_t, x_t.T @ y_t, stats)


def baseline_fold_products(
    data: DatasetPair,
    part: Partitioning,
    cfg: PreprocessConfig = PreprocessConfig(),
    n_jobs: int = 1,
) -> list[FoldResult]:
    """
    Preprocessed training-partition products for every fold, ascending fold id.

    Parameters
    ----------
    data : DatasetPair
    part : Partitioning
        Must be scalable (every training partition has >= 2 rows) when
        ``cfg`` scales either side.
    cfg : PreprocessConfig
        Centering is applied before scaling on each side.
    n_jobs : int
        Worker threads across folds. Does not change any output bit.

    Raises
    ------
    ScalabilityError
        If scaling is requested on a non-scalable partitioning.
    """
    if part.n_rows != data.n_rows:
        raise ValueError(f"partitioning has {part.n_rows} labels for {data.n_rows} rows")
    if cfg.any_scale:
        violation = check_scalable(part)
        if violation is not None:
            raise ScalabilityError(violation.message)
    return map_folds(lambda p: baseline_fold(data, part, p, cfg), fold_ids(part.p), n_jobs)
