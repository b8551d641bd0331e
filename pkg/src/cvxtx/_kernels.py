"""
Compiled per-fold arithmetic for the fast engine.

Every loop runs in a fixed order, so results do not depend on how folds are
scheduled. Functions release the GIL.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Radicand values within this many ulps of the magnitude of their terms are
# indistinguishable from zero.
RADICAND_ULPS = 64.0
_EPS = float(np.finfo(np.float64).eps)


@njit(cache=True, nogil=True, error_model="numpy")
def mean_from_global(global_mean, val_mean, n, n_val):
    n_train = n - n_val
    a = n / n_train
    b = n_val / n_train
    out = np.empty_like(global_mean)
    for j in range(global_mean.shape[0]):
        out[j] = a * global_mean[j] - b * val_mean[j]
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def std_from_sums(mean_t, sum_t, sum_sq_t, n_train):
    out = np.empty_like(mean_t)
    tol = RADICAND_ULPS * _EPS
    for j in range(mean_t.shape[0]):
        cross = -2.0 * mean_t[j] * sum_t[j]
        square = n_train * mean_t[j] ** 2
        radicand = cross + square + sum_sq_t[j]
        if radicand <= tol * (abs(cross) + square + abs(sum_sq_t[j])):
            radicand = 0.0
        s = np.sqrt(radicand / (n_train - 1))
        out[j] = 1.0 if s == 0.0 else s
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def column_sums(block):
    out = np.zeros(block.shape[1])
    for i in range(block.shape[0]):
        for j in range(block.shape[1]):
            out[j] += block[i, j]
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def column_sums_sq(block):
    out = np.zeros(block.shape[1])
    for i in range(block.shape[0]):
        for j in range(block.shape[1]):
            out[j] += block[i, j] * block[i, j]
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def downdate_product(total, block_product, left_mean, right_mean, n_train, left_std, right_std):
    """((total - block_product) - (left_mean[i] * right_mean[j]) * n_train) / (left_std[i] * right_std[j])."""
    rows, cols = total.shape
    out = np.empty((rows, cols))
    for i in range(rows):
        a = left_mean[i]
        s = left_std[i]
        for j in range(cols):
            out[i, j] = ((total[i, j] - block_product[i, j]) - (a * right_mean[j]) * n_train) / (
                s * right_std[j]
            )
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def downdate_symmetric(total, block_product, mean, n_train, std):
    """Symmetric case of :func:`downdate_product`: upper triangle computed, lower mirrored."""
    k = total.shape[0]
    out = np.empty((k, k))
    for i in range(k):
        a = mean[i]
        s = std[i]
        for j in range(i, k):
            out[i, j] = ((total[i, j] - block_product[i, j]) - (a * mean[j]) * n_train) / (s * std[j])
    for i in range(1, k):
        for j in range(i):
            out[i, j] = out[j, i]
    return out


@njit(cache=True, nogil=True, error_model="numpy")
def finish_fold(
    xtx, xty, xtx_v, xty_v, x_v, y_v,
    mean_x, mean_y, sum_x, sum_y, sum_sq_x, sum_sq_y,
    n, center_x, center_y, scale_x, scale_y,
):
    """
    Everything a fold needs after the validation-block products.

    Cache vectors the configuration does not use may be empty. Returns the
    preprocessed products and the training means and deviations; unused
    statistics come back as zeros (means) or ones (deviations).
    """
    k = xty.shape[0]
    m = xty.shape[1]
    n_val = x_v.shape[0]
    n_train = n - n_val
    mean_xt = np.zeros(k)
    mean_yt = np.zeros(m)
    std_xt = np.ones(k)
    std_yt = np.ones(m)

    if center_x or center_y or scale_x or scale_y:
        sum_xv = column_sums(x_v)
        sum_yv = column_sums(y_v)
        mean_xt = mean_from_global(mean_x, sum_xv / n_val, n, n_val)
        mean_yt = mean_from_global(mean_y, sum_yv / n_val, n, n_val)
        if scale_x:
            std_xt = std_from_sums(mean_xt, sum_x - sum_xv, sum_sq_x - column_sums_sq(x_v), n_train)
        if scale_y:
            std_yt = std_from_sums(mean_yt, sum_y - sum_yv, sum_sq_y - column_sums_sq(y_v), n_train)

    zeros_x = np.zeros(k)
    xtx_t = downdate_symmetric(xtx, xtx_v, mean_xt if center_x else zeros_x, n_train, std_xt)
    if center_x or center_y:
        xty_t = downdate_product(xty, xty_v, mean_xt, mean_yt, n_train, std_xt, std_yt)
    else:
        xty_t = downdate_product(xty, xty_v, zeros_x, np.zeros(m), n_train, std_xt, std_yt)
    return xtx_t, xty_t, mean_xt, mean_yt, std_xt, std_yt
