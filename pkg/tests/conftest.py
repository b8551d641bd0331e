import numpy as np
import pytest

from cvxtx import DatasetPair, Partitioning, PreprocessConfig
from cvxtx.combos import enumerate_configs

ALL_CONFIGS = enumerate_configs()


def config_id(cfg: PreprocessConfig) -> str:
    return cfg.label


@pytest.fixture
def micro():
    """X = [1, 3, 5], Y = [2, 4, 6], labels [1, 1, 2]; fold 2 trains on rows 1 and 2."""
    data = DatasetPair([[1.0], [3.0], [5.0]], [[2.0], [4.0], [6.0]])
    return data, Partitioning([1, 1, 2], 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_case(rng, n=40, k=6, m=3, p=5, offset=0.0):
    x = rng.random((n, k)) + offset
    y = rng.random((n, m)) - offset
    labels = rng.permutation(n) % p + 1
    return DatasetPair(x, y), Partitioning(labels, p)


def training_rows(part: Partitioning, fold: int) -> np.ndarray:
    return np.flatnonzero(part.labels != fold)


def direct_products(data, part, fold, cfg):
    """Training products built entry by entry from the training rows (independent of both engines)."""
    rows = training_rows(part, fold)
    x = data.x[rows].copy()
    y = data.y[rows].copy()
    for arr, center, scale in ((x, cfg.center_x, cfg.scale_x), (y, cfg.center_y, cfg.scale_y)):
        n = arr.shape[0]
        for j in range(arr.shape[1]):
            col = arr[:, j]
            mean = sum(col) / n
            std = (sum((v - mean) ** 2 for v in col) / (n - 1)) ** 0.5 if n > 1 else 0.0
            if np.all(col == col[0]):
                std = 0.0
            if center:
                arr[:, j] = col - mean
            if scale:
                arr[:, j] = arr[:, j] / (std if std != 0 else 1.0)
    return x.T @ x, x.T @ y


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if config.acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in config.acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def record(request):
    """Print and keep one PASS/FAIL line for an acceptance criterion, then assert it."""

    def _record(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        request.config.acceptance_lines.append(line)
        assert ok, line

    return _record
