"""Random-walk Metropolis-Hastings on R^d."""

import logging
from dataclasses import dataclass

import numpy as np

from ..common.exceptions import ValidationError
from .base import TargetMeasure

logger = logging.getLogger(__name__)


@dataclass
class ChainResult:
    """States of a random-walk chain and its acceptance count"""

    states: np.ndarray
    accepted: int

    @property
    def acceptance_rate(self) -> float:
        transitions = len(self.states) - 1
        return self.accepted / transitions if transitions > 0 else 0.0


def random_walk_chain(
    target: TargetMeasure,
    length: int,
    proposal_std: float,
    rng: np.random.Generator,
) -> ChainResult:
    """Isotropic Gaussian random-walk MH targeting `target`.

    The first state is target.chain_start(rng); all `length` states are kept, no
    thinning. Proposals outside the support have log density -inf and are
    always rejected.
    """
    if length < 1:
        raise ValidationError(f"Chain length must be >= 1, got {length}")
    if proposal_std < 0:
        raise ValidationError(f"Proposal std must be >= 0, got {proposal_std}")

    states = np.empty((length, target.dimension))
    states[0] = target.chain_start(rng)
    current_log = target.log_density(states[0])

    # Draw all proposal increments and uniforms up front, then shift them
    increments = proposal_std * rng.standard_normal((length - 1, target.dimension))
    log_uniforms = np.log(rng.random(length - 1))

    accepted = 0
    current = states[0]
    for t in range(1, length):
        proposal = current + increments[t - 1]
        proposal_log = target.log_density(proposal)
        if np.isfinite(proposal_log) and log_uniforms[t - 1] < proposal_log - current_log:
            current = proposal
            current_log = proposal_log
            accepted += 1
        states[t] = current

    result = ChainResult(states=states, accepted=accepted)
    logger.debug(
        f"Random-walk chain of length {length}: acceptance {result.acceptance_rate:.3f}"
    )
    return result
