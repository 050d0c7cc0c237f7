"""Step-size tuning: bracket alpha0 until pilot acceptance lands in the band.

Acceptance decreases with alpha0. Starting from cfg.alpha0, alpha0 is doubled
(acceptance too high) or halved (too low) until the band is bracketed, then
bisected on log alpha0. Pilots share one chain that keeps advancing across
rounds, so later rounds measure acceptance away from the initial transient.
An alpha0 whose pilot lands in the band is only returned once a longer
confirmation pilot, continued from the advanced state, lands in the band too.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..common.exceptions import TuningError
from ..core.config import GibbsRunConfig, SamplerDefaults
from ..embedding.potential import Potential
from ..energy.configuration import ParticleConfiguration
from ..kernels.base import BaseKernel
from ..measures.base import TargetMeasure
from .initialization import initial_configuration
from .mala import ChainState, MALASampler

logger = logging.getLogger(__name__)

AcceptanceFn = Callable[[float], float]


@dataclass
class TuningResult:
    """Tuned alpha0 and the (alpha0, acceptance) pairs visited"""

    alpha0: float
    trace: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return len(self.trace)


class PilotChain:
    """One MALA chain reused by every tuning pilot"""

    def __init__(
        self,
        cfg: GibbsRunConfig,
        kernel: BaseKernel,
        potential: Potential,
        initial: ParticleConfiguration,
        rng: np.random.Generator,
    ):
        self.kernel = kernel
        self.potential = potential
        self.beta = cfg.beta
        self.rng = rng
        sampler = MALASampler(kernel, potential, cfg.beta, cfg.alpha0)
        self.state: ChainState = sampler.initial_state(initial)

    def acceptance(self, alpha0: float, steps: int) -> float:
        """Acceptance rate of `steps` transitions at alpha0, continuing the chain"""
        sampler = MALASampler(self.kernel, self.potential, self.beta, alpha0)
        self.state, diagnostics = sampler.run(self.state, steps, self.rng)
        return diagnostics.acceptance_rate


def tune_step_size(
    cfg: GibbsRunConfig,
    kernel: BaseKernel,
    potential: Potential,
    rng: np.random.Generator,
    initial: Optional[ParticleConfiguration] = None,
    target: Optional[TargetMeasure] = None,
    acceptance_fn: Optional[AcceptanceFn] = None,
    band: Tuple[float, float] = SamplerDefaults.ACCEPTANCE_BAND,
    max_rounds: int = SamplerDefaults.MAX_TUNING_ROUNDS,
) -> TuningResult:
    """Bracketing search for alpha0; acceptance_fn replaces pilot runs when given.

    Every visited alpha0, confirmation pilots included, is one round of the trace.
    """
    if acceptance_fn is None:
        if initial is None:
            initial = initial_configuration(cfg.init, cfg.n, cfg.d, rng, target)
        pilot = PilotChain(cfg, kernel, potential, initial, rng)
        confirmation_steps = SamplerDefaults.CONFIRMATION_FACTOR * cfg.pilot_steps

        def measure(alpha0: float) -> float:
            return pilot.acceptance(alpha0, cfg.pilot_steps)

        def confirm(alpha0: float) -> float:
            return pilot.acceptance(alpha0, confirmation_steps)

    else:
        measure = confirm = acceptance_fn

    low_band, high_band = band
    alpha0 = cfg.alpha0
    lower: Optional[float] = None  # latest alpha0 with acceptance above band
    upper: Optional[float] = None  # latest alpha0 with acceptance below band
    candidate = False  # the previous pilot at this alpha0 landed in the band
    result = TuningResult(alpha0=alpha0)

    for round_index in range(max_rounds):
        acceptance = confirm(alpha0) if candidate else measure(alpha0)
        result.trace.append((alpha0, acceptance))
        logger.debug(
            f"Tuning round {round_index + 1}: alpha0={alpha0:.6g} acceptance={acceptance:.3f}"
            + (" (confirmation)" if candidate else "")
        )
        if low_band <= acceptance <= high_band:
            if candidate:
                result.alpha0 = alpha0
                logger.info(
                    f"Tuned alpha0={alpha0:.6g} (confirmed acceptance {acceptance:.3f}, "
                    f"{round_index + 1} rounds)"
                )
                return result
            candidate = True
            continue

        candidate = False
        # lower < upper; the newest reading replaces a crossed bound
        if acceptance > high_band:
            lower = alpha0
            if upper is not None and upper <= lower:
                upper = None
        else:
            upper = alpha0
            if lower is not None and lower >= upper:
                lower = None

        if lower is not None and upper is not None:
            alpha0 = math.exp(0.5 * (math.log(lower) + math.log(upper)))
        elif upper is None:
            alpha0 *= 2.0
        else:
            alpha0 /= 2.0

    raise TuningError(
        f"alpha0 did not reach acceptance band {band} in {max_rounds} rounds",
        result.trace,
    )


def tune_alpha0(
    cfg: GibbsRunConfig,
    kernel: BaseKernel,
    potential: Potential,
    rng: np.random.Generator,
    initial: Optional[ParticleConfiguration] = None,
    target: Optional[TargetMeasure] = None,
    acceptance_fn: Optional[AcceptanceFn] = None,
) -> float:
    """Tuned alpha0 such that pilot acceptance lies in [0.4, 0.6]"""
    return tune_step_size(
        cfg,
        kernel,
        potential,
        rng,
        initial=initial,
        target=target,
        acceptance_fn=acceptance_fn,
    ).alpha0
