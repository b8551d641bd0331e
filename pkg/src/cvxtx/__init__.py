"""
Per-fold ``X^T X`` and ``X^T Y`` for P-fold cross-validation.

Centering and scaling use statistics of each training partition only. The
fast engine's cost does not grow with the number of folds; the baseline
engine recomputes every fold from its training rows and serves as the oracle.
"""

from .baseline import baseline_fold_products
from .combos import ComboClassReport, classify_combos, enumerate_configs
from .core import (
    CVError,
    DatasetPair,
    DegenerateFoldError,
    DimensionError,
    FoldResult,
    FoldStats,
    GlobalCache,
    PartitionError,
    Partitioning,
    PreconditionError,
    PreprocessConfig,
    ScalabilityError,
    hadamard_outer_divide,
)
from .fast import fold_products, precompute_global, run_all_folds, training_mean, training_std
from .leakage import leakage_divergence, lindgren_centered_xtx
from .partition import (
    ValidationIndex,
    build_validation_partitions,
    check_scalable,
    validate_partitioning,
)

__all__ = [
    "CVError",
    "ComboClassReport",
    "DatasetPair",
    "DegenerateFoldError",
    "DimensionError",
    "FoldResult",
    "FoldStats",
    "GlobalCache",
    "PartitionError",
    "Partitioning",
    "PreconditionError",
    "PreprocessConfig",
    "ScalabilityError",
    "ValidationIndex",
    "baseline_fold_products",
    "build_validation_partitions",
    "check_scalable",
    "classify_combos",
    "enumerate_configs",
    "fold_products",
    "hadamard_outer_divide",
    "leakage_divergence",
    "lindgren_centered_xtx",
    "precompute_global",
    "run_all_folds",
    "training_mean",
    "training_std",
    "validate_partitioning",
]
