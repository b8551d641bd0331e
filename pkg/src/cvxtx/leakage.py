"""
Probe for centering leakage in the Lindgren et al. (1994) downdating formula.

That formula centers a training partition's ``X^T X`` with a correction built
from whole-dataset means, so validation rows influence the result. Comparing
it against proper training-partition centering exposes the discrepancy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baseline import baseline_fold
from .core import DatasetPair, FloatArray, Partitioning, PreprocessConfig

CENTER_X = PreprocessConfig(center_x=True)


def lindgren_centered_xtx(
    data: DatasetPair, part: Partitioning, fold: int, use_fold_size: bool = False
) -> FloatArray:
    """
    Training ``X^T X`` of ``fold`` centered the Lindgren way.

    Entry ``(i, j)`` is
    ``(X_T^T X_T)_ij - (2N - c) * xbar_i * xbar_j + |T| * xbar_i * xbar_T_j + |T| * xbar_j * xbar_T_i``
    where ``xbar`` is the whole-dataset mean, ``xbar_T`` the training mean and
    ``c`` the assumed validation size. By default ``c = N / P``, the balanced
    fold size the original formula presumes. ``use_fold_size=True`` uses the
    actual ``|V_p|`` instead, which differs only for unbalanced folds.
    """
    train = part.labels != fold
    x_t = data.x[train]
    n = data.n_rows
    n_train = x_t.shape[0]
    block = (n - n_train) if use_fold_size else n / part.p
    mean = data.x.mean(axis=0)
    mean_t = x_t.mean(axis=0)

    global_term = np.outer(mean, mean) * (2 * n - block)
    cross = n_train * np.outer(mean, mean_t)
    return x_t.T @ x_t - global_term + cross + cross.T


@dataclass(frozen=True)
class LeakageReport:
    """Per-fold largest absolute gap between Lindgren and proper centering."""

    folds: tuple[int, ...]
    divergence: tuple[float, ...]

    @property
    def max_divergence(self) -> float:
        return max(self.divergence)

    def to_text(self) -> str:
        lines = [f"{'fold':>6}  {'max |lindgren - proper|':>24}"]
        lines += [f"{p:>6}  {d:>24.6e}" for p, d in zip(self.folds, self.divergence)]
        return "\n".join(lines) + "\n"


def leakage_divergence(
    data: DatasetPair, part: Partitioning, use_fold_size: bool = False
) -> LeakageReport:
    """Compare :func:`lindgren_centered_xtx` with the baseline center-X product on every fold."""
    folds = tuple(range(1, part.p + 1))
    gaps = []
    for p in folds:
        proper = baseline_fold(data, part, p, CENTER_X).xtx_t
        leaky = lindgren_centered_xtx(data, part, p, use_fold_size)
        gaps.append(float(np.max(np.abs(leaky - proper))))
    return LeakageReport(folds, tuple(gaps))


def canonical_example() -> tuple[DatasetPair, Partitioning, int]:
    """
    Three rows and the fold whose training partition (rows 1 and 2) is
    centered while the whole column is not. Lindgren gives -6, proper
    centering gives 2.
    """
    x = np.array([[-1.0], [1.0], [4.0]])
    return DatasetPair(x, np.zeros((3, 1))), Partitioning([1, 1, 2], 2), 2


def mean_zero_example() -> tuple[DatasetPair, Partitioning]:
    """Data centered both globally and within every training partition."""
    x = np.array([[-1.0, 2.0], [1.0, -2.0], [-1.0, 2.0], [1.0, -2.0]])
    return DatasetPair(x, np.zeros((4, 1))), Partitioning([1, 1, 2, 2], 2)
