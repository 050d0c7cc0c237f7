import logging
from dataclasses import dataclass

import numpy as np

from ..common.rng import derive_rng
from ..energy.discrepancy import interaction_energy, mmd_squared_to_reference
from ..energy.configuration import PointsLike
from ..kernels.base import BaseKernel
from ..measures.base import TargetMeasure
from ..measures.metropolis import random_walk_chain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReferenceSet:
    """Independent MH chain standing in for pi in MMD cross and self terms"""

    points: np.ndarray
    kernel: BaseKernel
    energy: float

    def mmd_squared(self, X: PointsLike) -> float:
        return mmd_squared_to_reference(X, self.points, self.kernel, self.energy)


def build_reference(
    target: TargetMeasure,
    kernel: BaseKernel,
    length: int,
    proposal_std: float,
    seed: int,
) -> ReferenceSet:
    """Reference chain from the (seed, "reference") stream, shared by all cells of a run"""
    chain = random_walk_chain(target, length, proposal_std, derive_rng(seed, "reference"))
    energy = interaction_energy(chain.states, kernel)
    logger.info(
        f"Reference chain of length {length} (acceptance {chain.acceptance_rate:.3f}, "
        f"self-energy {energy:.6g})"
    )
    return ReferenceSet(points=chain.states, kernel=kernel, energy=energy)
