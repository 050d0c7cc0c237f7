"""Discrete Hamiltonian of the Gibbs measure.

    H_n(X) = 1/(2 n^2) sum_{i != j} K(x_i, x_j) + 1/n sum_i V(x_i)

The diagonal i = j is excluded here, unlike interaction_energy which is the
energy of the empirical measure and includes it. Scalar sums go through
math.fsum, so results are correctly rounded and do not depend on point order.
"""

import math
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..embedding.potential import Potential
from ..kernels.base import BaseKernel
from .configuration import EnergyBreakdown, PointsLike, as_points


@lru_cache(maxsize=32)
def _upper_pairs(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def exact_sum(values: np.ndarray) -> float:
    """Correctly rounded sum of all entries; non-finite input propagates as inf or nan"""
    flat = np.ravel(values)
    if not np.all(np.isfinite(flat)):
        with np.errstate(invalid="ignore", over="ignore"):
            return float(np.sum(flat))
    try:
        return math.fsum(flat.tolist())
    except OverflowError:
        return math.nan


def _breakdown(
    points: np.ndarray, gram: np.ndarray, potential_values: np.ndarray
) -> EnergyBreakdown:
    n = points.shape[0]
    # (1 / 2n^2) * sum_{i != j} = (1 / n^2) * sum_{i < j} by symmetry
    interaction = exact_sum(gram[_upper_pairs(n)]) / n**2 if n > 1 else 0.0
    confinement = exact_sum(potential_values) / n
    return EnergyBreakdown(interaction=interaction, confinement=confinement)


def hamiltonian(X: PointsLike, kernel: BaseKernel, potential: Potential) -> EnergyBreakdown:
    """H_n(X) split into interaction and confinement"""
    points = as_points(X)
    return _breakdown(points, kernel.gram(points), potential.value(points))


def grad_hamiltonian(X: PointsLike, kernel: BaseKernel, potential: Potential) -> np.ndarray:
    """Row i: (1/n^2) sum_{j != i} grad_1 K(x_i, x_j) + (1/n) grad V(x_i)"""
    points = as_points(X)
    n = points.shape[0]
    return kernel.pair_gradient_sum(points) / n**2 + potential.gradient(points) / n


def energy_and_gradient(
    points: np.ndarray, kernel: BaseKernel, potential: Potential
) -> Tuple[EnergyBreakdown, np.ndarray]:
    """H_n and its gradient from a single pass over pairwise distances.

    Takes a raw (n, d) array, which may hold non-finite proposals; callers check
    the result for finiteness.
    """
    n = points.shape[0]
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        gram, pair_grad = kernel.self_interactions(points)
        values, potential_grad = potential.value_and_gradient(points)
        energy = _breakdown(points, gram, values)
        gradient = pair_grad / n**2 + potential_grad / n
    return energy, gradient
