import numpy as np
import pytest

from cvxtx import DatasetPair, Partitioning, leakage_divergence, lindgren_centered_xtx
from cvxtx.baseline import baseline_fold
from cvxtx.leakage import CENTER_X, canonical_example, mean_zero_example

from conftest import random_case, training_rows


def test_canonical_example():
    data, part, fold = canonical_example()
    assert lindgren_centered_xtx(data, part, fold)[0, 0] == pytest.approx(-6.0, abs=1e-12)
    assert baseline_fold(data, part, fold, CENTER_X).xtx_t[0, 0] == pytest.approx(2.0, abs=1e-12)
    assert leakage_divergence(data, part).divergence[fold - 1] == pytest.approx(8.0, abs=1e-12)


def test_canonical_example_by_hand():
    # xbar = 4/3, training mean 0, X_T^T X_T = 2, N = 3, P = 2
    data, part, fold = canonical_example()
    expected = 2.0 - (4.0 / 3.0) ** 2 * (2 * 3 - 3 / 2)
    assert lindgren_centered_xtx(data, part, fold)[0, 0] == pytest.approx(expected, abs=1e-12)


def test_mean_zero_data_does_not_leak():
    data, part = mean_zero_example()
    assert leakage_divergence(data, part).max_divergence <= 1e-12


def test_random_data_leaks_on_every_fold(rng):
    for _ in range(20):
        data, part = random_case(rng, n=30, k=3, m=1, p=5)
        assert min(leakage_divergence(data, part).divergence) > 0


def test_balanced_folds_ignore_fold_size_switch(rng):
    data, part = random_case(rng, n=30, k=3, m=1, p=5)
    for fold in range(1, 6):
        np.testing.assert_allclose(
            lindgren_centered_xtx(data, part, fold),
            lindgren_centered_xtx(data, part, fold, use_fold_size=True),
            rtol=1e-13,
        )


def test_fold_size_switch_on_unbalanced_folds():
    data, part, fold = canonical_example()
    # |V| = 1 instead of N/P = 1.5
    value = lindgren_centered_xtx(data, part, fold, use_fold_size=True)[0, 0]
    assert value == pytest.approx(2.0 - (16.0 / 9.0) * 5.0, abs=1e-12)


def test_gap_identity(rng):
    """Lindgren minus proper equals |T| m_T m_T' - (2N - N/P) m m' + |T| (m m_T' + m_T m')."""
    data, part = random_case(rng, n=36, k=4, m=1, p=6, offset=1.0)
    n, p = data.n_rows, part.p
    m = data.x.mean(axis=0)
    for fold in range(1, p + 1):
        x_t = data.x[training_rows(part, fold)]
        m_t, n_t = x_t.mean(axis=0), x_t.shape[0]
        gap = lindgren_centered_xtx(data, part, fold) - baseline_fold(data, part, fold, CENTER_X).xtx_t
        expected = (
            n_t * np.outer(m_t, m_t)
            - (2 * n - n / p) * np.outer(m, m)
            + n_t * (np.outer(m, m_t) + np.outer(m_t, m))
        )
        np.testing.assert_allclose(gap, expected, rtol=1e-10, atol=1e-10)


def test_report_text():
    data, part = mean_zero_example()
    text = leakage_divergence(data, part).to_text()
    assert text.splitlines()[0].split()[0] == "fold"
    assert len(text.splitlines()) == 3
