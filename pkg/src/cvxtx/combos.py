"""
The sixteen centering/scaling combinations and which of them coincide.

On generic data the ``X^T Y`` products fall into 8 classes: centering one
side, the other, or both gives the same cross product, so only "centered or
not" matters there, while each scaling flag still counts. Pairs
``(X^T X, X^T Y)`` fall into 12 classes because ``X^T X`` additionally tells
"X centered" apart. The classes are certified numerically by running the
fast engine for every combination.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .core import DatasetPair, Partitioning, PreprocessConfig
from .fast import run_all_folds

EXPECTED_XTY_CLASSES = 8
EXPECTED_PAIR_CLASSES = 12


class DegenerateDataWarning(UserWarning):
    """Classes merged that should be distinct on generic data."""


def enumerate_configs() -> list[PreprocessConfig]:
    """All 16 configurations, counting (center_x, center_y, scale_x, scale_y) as a 4-bit number."""
    return [PreprocessConfig(*flags) for flags in itertools.product((False, True), repeat=4)]


def relative_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance of ``a`` and ``b`` relative to the larger of their norms."""
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)


def _group(n: int, same) -> list[int]:
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(n), 2):
        if same(i, j):
            parent[find(j)] = find(i)

    # 1-based ids in order of first appearance.
    ids: dict[int, int] = {}
    return [ids.setdefault(find(i), len(ids) + 1) for i in range(n)]


@dataclass(frozen=True)
class ComboClassReport:
    """
    Class assignment for each of the 16 configurations.

    ``min_separation_xty`` and ``min_separation_pair`` are the smallest
    distances between configurations that ended up in different classes, so a
    reader can judge how far above ``tol`` the split sits.
    """

    configs: tuple[PreprocessConfig, ...]
    xty_class: dict[PreprocessConfig, int]
    pair_class: dict[PreprocessConfig, int]
    tol: float
    min_separation_xty: float
    min_separation_pair: float

    @property
    def n_xty_classes(self) -> int:
        return len(set(self.xty_class.values()))

    @property
    def n_pair_classes(self) -> int:
        return len(set(self.pair_class.values()))

    @property
    def degenerate(self) -> bool:
        return (
            self.n_xty_classes != EXPECTED_XTY_CLASSES
            or self.n_pair_classes != EXPECTED_PAIR_CLASSES
        )

    def to_text(self) -> str:
        """Two grids, rows by centering choice and columns by scaling choice."""
        sides = {(False, False): "none", (True, False): "X", (False, True): "Y", (True, True): "X,Y"}
        order = list(sides)
        corner = "center \\ scale"
        lines = []
        for title, table in (
            ("X^T Y classes", self.xty_class),
            ("(X^T X, X^T Y) classes", self.pair_class),
        ):
            lines.append(f"{title}: {len(set(table.values()))}")
            lines.append(f"{corner:<16}" + "".join(f"{sides[s]:>6}" for s in order))
            for c in order:
                row = "".join(
                    f"{table[PreprocessConfig(c[0], c[1], s[0], s[1])]:>6}" for s in order
                )
                lines.append(f"{sides[c]:<16}{row}")
            lines.append("")
        lines.append(f"tolerance: {self.tol:.3g}")
        lines.append(f"min separation (X^T Y): {self.min_separation_xty:.6g}")
        lines.append(f"min separation (pair): {self.min_separation_pair:.6g}")
        if self.degenerate:
            lines.append("WARNING: class counts differ from 8 / 12; data may be degenerate")
        return "\n".join(lines) + "\n"


def classify_combos(data: DatasetPair, part: Partitioning, tol: float = 1e-9) -> ComboClassReport:
    """
    Group the 16 configurations by the products they produce on ``data``.

    Two configurations share a class when their stacked per-fold products lie
    within relative Frobenius distance ``tol``; grouping is transitive. Emits
    :class:`DegenerateDataWarning` when the counts are not 8 and 12, which
    happens for inputs that are already centered or scaled.
    """
    configs = enumerate_configs()
    xtx, xty = [], []
    for cfg in configs:
        results = run_all_folds(data, part, cfg)
        xtx.append(np.stack([r.xtx_t for r in results]))
        xty.append(np.stack([r.xty_t for r in results]))

    n = len(configs)
    d_xty = np.zeros((n, n))
    d_pair = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        dy = relative_distance(xty[i], xty[j])
        dp = max(dy, relative_distance(xtx[i], xtx[j]))
        d_xty[i, j] = d_xty[j, i] = dy
        d_pair[i, j] = d_pair[j, i] = dp

    xty_ids = _group(n, lambda i, j: d_xty[i, j] <= tol)
    pair_ids = _group(n, lambda i, j: d_pair[i, j] <= tol)

    def separation(ids: list[int], dist: np.ndarray) -> float:
        gaps = [dist[i, j] for i, j in itertools.combinations(range(n), 2) if ids[i] != ids[j]]
        return float(min(gaps)) if gaps else float("inf")

    report = ComboClassReport(
        configs=tuple(configs),
        xty_class=dict(zip(configs, xty_ids)),
        pair_class=dict(zip(configs, pair_ids)),
        tol=tol,
        min_separation_xty=separation(xty_ids, d_xty),
        min_separation_pair=separation(pair_ids, d_pair),
    )
    if report.degenerate:
        warnings.warn(
            f"found {report.n_xty_classes} X^T Y and {report.n_pair_classes} pair classes "
            f"(expected {EXPECTED_XTY_CLASSES} and {EXPECTED_PAIR_CLASSES})",
            DegenerateDataWarning,
            stacklevel=2,
        )
    return report
