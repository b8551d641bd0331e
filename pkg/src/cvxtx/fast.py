"""
Fast engine: downdate whole-dataset aggregates by each validation block.

``X^T X``, ``X^T Y``, column sums and column sums of squares are computed once.
Each fold then only touches its own validation rows: their contribution is
subtracted to recover the training-partition products and sums, from which
the training means and standard deviations follow. Centering and scaling are
applied to the products directly, so total work matches a single pass over
the data plus the validation blocks, whatever the number of folds.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from . import _kernels
from ._exec import map_folds, single_threaded_blas
from .core import (
    DatasetPair,
    DegenerateFoldError,
    FloatArray,
    FoldResult,
    FoldStats,
    GlobalCache,
    Partitioning,
    PreprocessConfig,
    ScalabilityError,
)
from .partition import build_validation_partitions, check_scalable


def precompute_global(data: DatasetPair, cfg: PreprocessConfig = PreprocessConfig()) -> GlobalCache:
    """
    Whole-dataset products and, when ``cfg`` needs them, column sums, means
    and sums of squares. Fields the configuration never reads stay ``None``.
    """
    x, y = data.x, data.y
    fields = {}
    if cfg.any_center or cfg.any_scale:
        sum_x = x.sum(axis=0)
        sum_y = y.sum(axis=0)
        fields.update(
            sum_x=sum_x, sum_y=sum_y,
            mean_x=sum_x / data.n_rows, mean_y=sum_y / data.n_rows,
        )
    if cfg.any_scale:
        fields.update(
            sum_sq_x=np.einsum("ij,ij->j", x, x),
            sum_sq_y=np.einsum("ij,ij->j", y, y),
        )
    return GlobalCache(xtx=x.T @ x, xty=x.T @ y, n_rows=data.n_rows, **fields)


def training_mean(
    global_mean: npt.ArrayLike, val_mean: npt.ArrayLike, n: int, n_val: int
) -> FloatArray:
    """
    Mean of the training rows from the global mean and the validation mean.

    Raises
    ------
    DegenerateFoldError
        If ``n_val >= n``, i.e. there are no training rows.
    """
    if not 0 <= n_val < n:
        raise DegenerateFoldError(f"validation block of {n_val} rows leaves no training rows out of {n}")
    global_mean = np.ascontiguousarray(global_mean, dtype=np.float64)
    val_mean = np.ascontiguousarray(val_mean, dtype=np.float64)
    return _kernels.mean_from_global(global_mean, val_mean, float(n), float(n_val))


def training_std(
    mean_t: npt.ArrayLike,
    sum_t: npt.ArrayLike,
    sum_sq_t: npt.ArrayLike,
    n_train: int,
) -> FloatArray:
    """
    Bessel-corrected training standard deviation from training sums.

    Evaluates ``sqrt((sum_sq_t - 2 * mean_t * sum_t + n_train * mean_t**2) / (n_train - 1))``
    column-wise. The radicand is clamped to zero when it is negative or lies
    below the rounding floor of its terms; zero deviations are then replaced
    by 1.

    Raises
    ------
    ScalabilityError
        If ``n_train < 2``.
    """
    if n_train < 2:
        raise ScalabilityError(f"standard deviation needs 2 training rows, got {n_train}")
    return _kernels.std_from_sums(
        np.ascontiguousarray(mean_t, dtype=np.float64),
        np.ascontiguousarray(sum_t, dtype=np.float64),
        np.ascontiguousarray(sum_sq_t, dtype=np.float64),
        float(n_train),
    )


_EMPTY = np.empty(0)


def _or_empty(a):
    return _EMPTY if a is None else a


def _block_products(x_v: FloatArray, y_v: FloatArray) -> tuple[FloatArray, FloatArray]:
    """``X_V^T X_V`` (only its upper triangle is read downstream) and ``X_V^T Y_V``."""
    k = x_v.shape[1]
    if x_v.shape[0] <= k // 2:
        # Short blocks: one general product beats the symmetric-rank-k path.
        both = x_v.T @ np.concatenate((x_v, y_v), axis=1)
        return both[:, :k], both[:, k:]
    return x_v.T @ x_v, x_v.T @ y_v


def _fold_from_block(
    cache: GlobalCache,
    x_v: FloatArray,
    y_v: FloatArray,
    cfg: PreprocessConfig,
    fold_id: int,
) -> FoldResult:
    # Receives only the validation rows and the cache; no training row is read here.
    n = cache.n_rows
    n_val = x_v.shape[0]
    n_train = n - n_val
    if n_val == 0 or n_train < 1:
        raise DegenerateFoldError(f"fold {fold_id}: validation block has {n_val} of {n} rows")
    if cfg.any_scale and n_train < 2:
        raise ScalabilityError(f"fold {fold_id} has {n_train} training row(s); scaling needs 2")

    xtx_v, xty_v = _block_products(x_v, y_v)
    xtx, xty, mean_x, mean_y, std_x, std_y = _kernels.finish_fold(
        cache.xtx, cache.xty, xtx_v, xty_v, x_v, y_v,
        _or_empty(cache.mean_x), _or_empty(cache.mean_y),
        _or_empty(cache.sum_x), _or_empty(cache.sum_y),
        _or_empty(cache.sum_sq_x), _or_empty(cache.sum_sq_y),
        float(n), cfg.center_x, cfg.center_y, cfg.scale_x, cfg.scale_y,
    )
    any_stats = cfg.any_center or cfg.any_scale
    stats = FoldStats(
        n_train,
        n_val,
        mean_x if any_stats else None,
        mean_y if any_stats else None,
        std_x if cfg.scale_x else None,
        std_y if cfg.scale_y else None,
    )
    return FoldResult(fold_id, xtx, xty, stats)


def fold_products(
    cache: GlobalCache,
    data: DatasetPair,
    v_rows: npt.ArrayLike,
    cfg: PreprocessConfig = PreprocessConfig(),
    fold_id: int = 0,
) -> FoldResult:
    """
    Preprocessed products for the training partition complementary to ``v_rows``.

    Parameters
    ----------
    cache : GlobalCache
        Output of :func:`precompute_global` for the same ``data`` and a
        configuration at least as demanding as ``cfg``.
    data : DatasetPair
        Only rows listed in ``v_rows`` are read.
    v_rows : sequence of int
        0-based validation row indices; non-empty proper subset of the rows.
    cfg : PreprocessConfig
    fold_id : int
        Identifier copied into the result.

    Raises
    ------
    DegenerateFoldError
        If ``v_rows`` is empty or covers every row.
    ScalabilityError
        If scaling is requested and fewer than 2 training rows remain.
    """
    v_rows = np.asarray(v_rows, dtype=np.int64)
    if np.unique(v_rows).size != v_rows.size:
        raise ValueError("v_rows contains duplicate indices")
    x_v = np.take(data.x, v_rows, axis=0)
    y_v = np.take(data.y, v_rows, axis=0)
    return _fold_from_block(cache, x_v, y_v, cfg, fold_id)


def run_all_folds(
    data: DatasetPair,
    part: Partitioning,
    cfg: PreprocessConfig = PreprocessConfig(),
    n_jobs: int = 1,
) -> list[FoldResult]:
    """
    Fold products for every fold, ascending fold id.

    One global precomputation, then one validation-block downdate per fold.
    ``n_jobs`` spreads folds over threads without changing any output bit.
    """
    if part.n_rows != data.n_rows:
        raise ValueError(f"partitioning has {part.n_rows} labels for {data.n_rows} rows")
    if cfg.any_scale:
        violation = check_scalable(part)
        if violation is not None:
            raise ScalabilityError(violation.message)
    with single_threaded_blas():
        cache = precompute_global(data, cfg)
    index = build_validation_partitions(part)

    def one(fold: int) -> FoldResult:
        rows = index[fold]
        return _fold_from_block(
            cache, np.take(data.x, rows, axis=0), np.take(data.y, rows, axis=0), cfg, fold
        )

    return map_folds(one, range(1, part.p + 1), n_jobs)
