import numpy as np

from ..energy.configuration import ParticleConfiguration
from ..measures.base import TargetMeasure
from ..measures.metropolis import random_walk_chain


def mh_baseline_chain(
    target: TargetMeasure,
    n: int,
    proposal_std: float,
    rng: np.random.Generator,
) -> ParticleConfiguration:
    """Node set of an n-state random-walk MH chain started from an exact draw"""
    return ParticleConfiguration(random_walk_chain(target, n, proposal_std, rng).states)
