"""Monte Carlo estimate of the kernel embedding U(z) = E_pi K(z, Y)."""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from ..common.exceptions import ValidationError
from ..kernels.base import BaseKernel
from ..measures.base import TargetMeasure
from ..measures.metropolis import random_walk_chain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingEstimate:
    """Reference points z_1..z_M and the estimator M^-1 sum_i K(., z_i)"""

    points: np.ndarray
    kernel: BaseKernel

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim != 2 or points.shape[0] < 1:
            raise ValidationError(f"Embedding needs M >= 1 points, got shape {points.shape}")
        if points.shape[1] != self.kernel.dimension:
            raise ValidationError(
                f"Embedding points have dimension {points.shape[1]}, "
                f"kernel expects {self.kernel.dimension}"
            )
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def value(self, z: np.ndarray) -> Union[float, np.ndarray]:
        """Estimated embedding at a point (float) or at each row (array)"""
        rows = np.atleast_2d(np.asarray(z, dtype=float))
        values = self.kernel.gram(rows, self.points).mean(axis=1)
        return float(values[0]) if np.ndim(z) == 1 else values

    def gradient(self, z: np.ndarray) -> np.ndarray:
        """Gradient of the estimated embedding, same leading shape as z"""
        rows = np.atleast_2d(np.asarray(z, dtype=float))
        grads = self.kernel.pair_gradient_sum(rows, self.points) / self.size
        return grads[0] if np.ndim(z) == 1 else grads

    def value_and_gradient(self, rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Embedding values and gradients at each row, sharing one distance pass"""
        gram, grads = self.kernel.cross_interactions(rows, self.points)
        return gram.mean(axis=1), grads / self.size


def estimate_embedding(
    target: TargetMeasure,
    kernel: BaseKernel,
    size: int,
    proposal_std: float,
    rng: np.random.Generator,
) -> EmbeddingEstimate:
    """Run a random-walk MH chain of length `size` on the target and keep every state"""
    if target.dimension != kernel.dimension:
        raise ValidationError(
            f"Target dimension {target.dimension} != kernel dimension {kernel.dimension}"
        )
    chain = random_walk_chain(target, size, proposal_std, rng)
    logger.info(
        f"Estimated kernel embedding from {size} MH states "
        f"(acceptance {chain.acceptance_rate:.3f})"
    )
    return EmbeddingEstimate(points=chain.states, kernel=kernel)
