"""Interaction energies between empirical measures and the squared MMD.

For empirical measures mu_X, mu_Y:
    I_K(mu_X)         = 1/n^2 sum_{i,j} K(x_i, x_j)   (diagonal included)
    I_K(mu_X, mu_Y)   = 1/(n m) sum_{i,j} K(x_i, y_j)
    MMD^2(X, Y)       = I_K(mu_X) - 2 I_K(mu_X, mu_Y) + I_K(mu_Y)
The square root of MMD^2 is the worst-case integration error over the unit
ball of the RKHS.
"""

import math
from typing import Iterator

import numpy as np

from ..common.exceptions import ValidationError
from ..kernels.base import BaseKernel
from .configuration import PointsLike, as_points

# Largest Gram block materialised at once
_BLOCK_ENTRIES = 2**22


def _gram_blocks(kernel: BaseKernel, X: np.ndarray, Y: np.ndarray) -> Iterator[float]:
    rows_per_block = max(1, _BLOCK_ENTRIES // max(Y.shape[0], 1))
    for start in range(0, X.shape[0], rows_per_block):
        yield from kernel.gram(X[start : start + rows_per_block], Y).ravel().tolist()


def kernel_total(kernel: BaseKernel, X: np.ndarray, Y: np.ndarray) -> float:
    """Correctly rounded sum of K(x_i, y_j) over all pairs, computed in blocks"""
    if X.shape[1] != Y.shape[1]:
        raise ValidationError(
            f"Point sets have different dimensions: {X.shape[1]} and {Y.shape[1]}"
        )
    return math.fsum(_gram_blocks(kernel, X, Y))


def interaction_energy(X: PointsLike, kernel: BaseKernel) -> float:
    """I_K of the empirical measure of X"""
    points = as_points(X)
    return kernel_total(kernel, points, points) / points.shape[0] ** 2


def cross_energy(X: PointsLike, Y: PointsLike, kernel: BaseKernel) -> float:
    """I_K(mu_X, mu_Y)"""
    x_points, y_points = as_points(X), as_points(Y)
    return kernel_total(kernel, x_points, y_points) / (
        x_points.shape[0] * y_points.shape[0]
    )


def _canonical_key(points: np.ndarray) -> tuple:
    return (points.shape[0], points.tobytes())


def mmd_squared(X: PointsLike, Y: PointsLike, kernel: BaseKernel) -> float:
    """Squared MMD; evaluated in a canonical order so mmd_squared(X, Y) == mmd_squared(Y, X)"""
    first, second = sorted((as_points(X), as_points(Y)), key=_canonical_key)
    if first.shape == second.shape and np.array_equal(first, second):
        return 0.0
    return (
        interaction_energy(first, kernel)
        - 2.0 * cross_energy(first, second, kernel)
        + interaction_energy(second, kernel)
    )


def worst_case_error(X: PointsLike, Y: PointsLike, kernel: BaseKernel) -> float:
    """sqrt(MMD^2), clipped at 0 against rounding"""
    return math.sqrt(max(mmd_squared(X, Y, kernel), 0.0))


def mmd_squared_to_reference(
    X: PointsLike,
    reference: PointsLike,
    kernel: BaseKernel,
    reference_energy: float,
) -> float:
    """MMD^2 against a reference set whose self-energy is already known.

    Used when the reference chain is large and shared across many cells.
    """
    return (
        interaction_energy(X, kernel)
        - 2.0 * cross_energy(X, reference, kernel)
        + reference_energy
    )
