"""Validation partitions and the validity and scalability checks on fold labels."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
import numpy.typing as npt

from .core import IntArray, Partitioning


@dataclass(frozen=True)
class Violation:
    """First condition a partitioning fails. ``fold`` is 1-based when applicable."""

    clause: str
    message: str
    fold: Optional[int] = None


@dataclass(frozen=True)
class ValidationIndex:
    """Sorted 0-based row indices of each validation partition; ``sets[p - 1]`` is fold ``p``."""

    sets: tuple[IntArray, ...]

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, fold: int) -> IntArray:
        """Rows of fold ``fold`` (1-based)."""
        if not 1 <= fold <= len(self.sets):
            raise IndexError(f"fold {fold} outside 1..{len(self.sets)}")
        return self.sets[fold - 1]


def validate_partitioning(labels: npt.ArrayLike, p: int) -> Optional[Violation]:
    """
    Check fold labels against the partitioning rules.

    Returns ``None`` when every label lies in ``1..p``, every fold in ``1..p``
    occurs, and ``2 <= p <= N``. Otherwise returns the first violated rule;
    never raises.
    """
    arr = np.asarray(labels)
    n = arr.shape[0] if arr.ndim == 1 else 0
    if arr.ndim != 1:
        return Violation("shape", "labels must be a one-dimensional sequence")
    if not 2 <= p <= n:
        return Violation("fold-count", f"fold count p={p} must satisfy 2 <= p <= N={n}")
    out_of_range = np.flatnonzero((arr < 1) | (arr > p))
    if out_of_range.size:
        i = int(out_of_range[0])
        return Violation(
            "range",
            f"label {arr[i]} at row {i + 1} is outside 1..{p}",
        )
    counts = np.bincount(arr.astype(np.int64) - 1, minlength=p)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        fold = int(empty[0]) + 1
        return Violation("union", f"fold {fold} has no rows", fold=fold)
    return None


def check_scalable(part: Partitioning) -> Optional[Violation]:
    """Return ``None`` if every training partition has at least 2 rows, else the first offending fold."""
    n_train = part.n_rows - part.fold_sizes()
    bad = np.flatnonzero(n_train < 2)
    if bad.size:
        fold = int(bad[0]) + 1
        return Violation(
            "scalable",
            f"fold {fold} leaves {int(n_train[bad[0]])} training row(s); scaling needs at least 2",
            fold=fold,
        )
    return None


def build_validation_partitions(part: Partitioning) -> ValidationIndex:
    """Group row indices by fold label in a single pass over the labels."""
    # Stable sort keeps rows ascending within each fold; on 16-bit keys numpy
    # uses a radix sort, so this stays linear in N.
    keys = part.labels.astype(np.uint16) if part.p < 2**16 else part.labels
    order = np.argsort(keys, kind="stable")
    bounds = np.cumsum(part.fold_sizes())[:-1]
    sets = tuple(np.split(order.astype(np.int64), bounds))
    for s in sets:
        s.setflags(write=False)
    return ValidationIndex(sets)


def random_partitioning(n: int, p: int, rng: Union[np.random.Generator, int]) -> Partitioning:
    """
    Seeded balanced assignment: a random permutation of the rows dealt round-robin into ``p`` folds.

    Fold sizes differ by at most one, so every fold is non-empty whenever ``p <= n``.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    labels = rng.permutation(n) % p + 1
    return Partitioning(labels, p)


def read_partition_file(path: Union[str, Path], p: Optional[int] = None) -> Partitioning:
    """Read one integer fold label per line (blank lines ignored)."""
    labels = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        text = line.strip()
        if not text:
            continue
        try:
            labels.append(int(text))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: not an integer fold label: {text!r}") from exc
    return Partitioning(np.array(labels, dtype=np.int64), p)


def write_partition_file(path: Union[str, Path], part: Partitioning) -> None:
    Path(path).write_text("".join(f"{int(v)}\n" for v in part.labels))
