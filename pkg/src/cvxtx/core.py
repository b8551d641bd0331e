"""
Shared domain types for fold-wise matrix products.

All matrices are dense, C-contiguous float64 arrays. Statistics are kept as
vectors (one entry per column) and never broadcast into per-row matrices.
Every type here is frozen after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]


class CVError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(CVError, ValueError):
    """X and Y disagree in shape, or a matrix is empty or non-finite."""


class PartitionError(CVError, ValueError):
    """A fold-label sequence is not a valid partitioning."""


class ScalabilityError(CVError, ValueError):
    """Scaling was requested but some training partition has fewer than 2 rows."""


class DegenerateFoldError(CVError, ValueError):
    """A validation partition covers every row, leaving no training rows."""


class PreconditionError(CVError, ValueError):
    """An operation's documented precondition does not hold."""


def _as_matrix(a: npt.ArrayLike, name: str) -> FloatArray:
    arr = np.array(a, dtype=np.float64, order="C", copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def _freeze(a: Optional[np.ndarray]) -> Optional[np.ndarray]:
    if a is not None:
        a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DatasetPair:
    """
    Feature matrix ``x`` (N x K) and response matrix ``y`` (N x M).

    One-dimensional inputs are read as a single column. Both arrays are copied
    to read-only float64 storage.
    """

    x: FloatArray
    y: FloatArray

    def __init__(self, x: npt.ArrayLike, y: npt.ArrayLike) -> None:
        xm = _as_matrix(x, "x")
        ym = _as_matrix(y, "y")
        if xm.shape[0] != ym.shape[0]:
            raise DimensionError(
                f"x has {xm.shape[0]} rows but y has {ym.shape[0]} rows"
            )
        if xm.shape[0] < 2:
            raise DimensionError(f"need at least 2 rows, got {xm.shape[0]}")
        if xm.shape[1] < 1 or ym.shape[1] < 1:
            raise DimensionError("x and y need at least one column each")
        object.__setattr__(self, "x", xm)
        object.__setattr__(self, "y", ym)

    @property
    def n_rows(self) -> int:
        return self.x.shape[0]

    @property
    def n_features(self) -> int:
        return self.x.shape[1]

    @property
    def n_responses(self) -> int:
        return self.y.shape[1]


@dataclass(frozen=True)
class Partitioning:
    """
    Fold assignment for every row.

    Labels are 1-based, as in the text formats: ``labels[n] == p`` places row
    ``n`` in the validation partition of fold ``p``. Construction validates the
    labels and raises :class:`PartitionError` on the first violated condition.
    """

    labels: IntArray
    p: int

    def __init__(self, labels: npt.ArrayLike, p: Optional[int] = None) -> None:
        from .partition import validate_partitioning

        arr = np.asarray(labels)
        if arr.ndim != 1:
            raise PartitionError("labels must be a one-dimensional sequence")
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.mod(arr, 1) == 0):
                raise PartitionError("labels must be integers")
        arr = np.array(arr, dtype=np.int64, copy=True)
        if p is None:
            p = int(arr.max()) if arr.size else 0
        violation = validate_partitioning(arr, p)
        if violation is not None:
            raise PartitionError(violation.message)
        arr.setflags(write=False)
        object.__setattr__(self, "labels", arr)
        object.__setattr__(self, "p", int(p))

    @property
    def n_rows(self) -> int:
        return self.labels.shape[0]

    def fold_sizes(self) -> IntArray:
        """Number of validation rows in each fold, indexed by ``p - 1``."""
        return np.bincount(self.labels - 1, minlength=self.p)


@dataclass(frozen=True)
class PreprocessConfig:
    """Which sides get centered and which get scaled. Centering precedes scaling."""

    center_x: bool = False
    center_y: bool = False
    scale_x: bool = False
    scale_y: bool = False

    @property
    def any_center(self) -> bool:
        return self.center_x or self.center_y

    @property
    def any_scale(self) -> bool:
        return self.scale_x or self.scale_y

    @property
    def label(self) -> str:
        """Canonical short name, e.g. ``"none"`` or ``"cx+cy+sx"``."""
        parts = [
            tag
            for tag, flag in (
                ("cx", self.center_x),
                ("cy", self.center_y),
                ("sx", self.scale_x),
                ("sy", self.scale_y),
            )
            if flag
        ]
        return "+".join(parts) if parts else "none"

    @classmethod
    def parse(cls, text: str) -> "PreprocessConfig":
        """
        Parse a config string.

        Tokens are joined by ``+`` or ``,`` and may be ``none``, ``cx``, ``cy``,
        ``sx``, ``sy``, ``center`` (both sides), ``scale`` (both sides) or
        ``all``. ``"center+scale"`` is therefore the full standardization.
        """
        flags = {"center_x": False, "center_y": False, "scale_x": False, "scale_y": False}
        expand = {
            "none": (),
            "cx": ("center_x",),
            "cy": ("center_y",),
            "sx": ("scale_x",),
            "sy": ("scale_y",),
            "center": ("center_x", "center_y"),
            "scale": ("scale_x", "scale_y"),
            "all": ("center_x", "center_y", "scale_x", "scale_y"),
        }
        tokens = [t.strip().lower() for t in text.replace(",", "+").split("+")]
        for tok in tokens:
            if tok not in expand:
                raise ValueError(f"unknown preprocessing token {tok!r} in {text!r}")
            for key in expand[tok]:
                flags[key] = True
        return cls(**flags)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class GlobalCache:
    """
    Whole-dataset aggregates computed once before the fold loop.

    ``xtx`` and ``xty`` are always present. Mean and sum vectors are only
    populated when some preprocessing is requested, sums of squares only when
    some scaling is requested; the rest stay ``None``.
    """

    xtx: FloatArray
    xty: FloatArray
    n_rows: int
    mean_x: Optional[FloatArray] = None
    mean_y: Optional[FloatArray] = None
    sum_x: Optional[FloatArray] = None
    sum_y: Optional[FloatArray] = None
    sum_sq_x: Optional[FloatArray] = None
    sum_sq_y: Optional[FloatArray] = None

    def __post_init__(self) -> None:
        for field in (
            self.xtx, self.xty, self.mean_x, self.mean_y,
            self.sum_x, self.sum_y, self.sum_sq_x, self.sum_sq_y,
        ):
            _freeze(field)


@dataclass(frozen=True)
class FoldStats:
    """
    Training-partition statistics used for one fold.

    A vector is ``None`` when the configuration never needed it. Standard
    deviations are Bessel-corrected and already have zero entries replaced by 1.
    """

    n_train: int
    n_val: int
    mean_x_t: Optional[FloatArray] = None
    mean_y_t: Optional[FloatArray] = None
    std_x_t: Optional[FloatArray] = None
    std_y_t: Optional[FloatArray] = None

    def __post_init__(self) -> None:
        for field in (self.mean_x_t, self.mean_y_t, self.std_x_t, self.std_y_t):
            _freeze(field)


@dataclass(frozen=True)
class FoldResult:
    """Preprocessed training-partition products ``xtx_t`` (K x K) and ``xty_t`` (K x M)."""

    fold_id: int
    xtx_t: FloatArray
    xty_t: FloatArray
    stats: FoldStats

    def __post_init__(self) -> None:
        _freeze(self.xtx_t)
        _freeze(self.xty_t)


def hadamard_outer_divide(
    m: npt.ArrayLike, left: npt.ArrayLike, right: npt.ArrayLike
) -> FloatArray:
    """
    Divide entry ``(i, j)`` of ``m`` by ``left[i] * right[j]``.

    Parameters
    ----------
    m : array of shape (K, M)
    left : array of shape (K,), strictly positive
    right : array of shape (M,), strictly positive

    Returns
    -------
    ndarray of shape (K, M)

    Raises
    ------
    PreconditionError
        If a divisor entry is not strictly positive or the shapes disagree.
    """
    m = np.asarray(m, dtype=np.float64)
    left = np.asarray(left, dtype=np.float64)
    right = np.asarray(right, dtype=np.float64)
    if m.shape != (left.shape[0], right.shape[0]):
        raise PreconditionError(
            f"shape mismatch: m {m.shape}, left {left.shape}, right {right.shape}"
        )
    if not (left.min(initial=np.inf) > 0 and right.min(initial=np.inf) > 0):
        raise PreconditionError("divisor vectors must be strictly positive")
    return m / np.multiply.outer(left, right)


def outer_divide_inplace(m: FloatArray, left: FloatArray, right: FloatArray) -> FloatArray:
    """Unchecked in-place form of :func:`hadamard_outer_divide`; same values."""
    np.divide(m, np.multiply.outer(left, right), out=m)
    return m
