import logging
from typing import Optional, Tuple

from ..common.rng import derive_rng
from ..common.timing import Stopwatch
from ..core.config import GibbsRunConfig, SamplerDefaults
from ..embedding.potential import Potential
from ..energy.configuration import ParticleConfiguration
from ..kernels.base import BaseKernel
from ..measures.base import TargetMeasure
from .initialization import initial_configuration
from .mala import ChainDiagnostics, MALASampler
from .tuning import tune_step_size

logger = logging.getLogger(__name__)


def sample_gibbs(
    cfg: GibbsRunConfig,
    kernel: BaseKernel,
    potential: Potential,
    target: Optional[TargetMeasure] = None,
    initial: Optional[ParticleConfiguration] = None,
    stream: int = 0,
    iteration_offset: int = 0,
) -> Tuple[ParticleConfiguration, ChainDiagnostics]:
    """Approximate draw from the Gibbs measure: tune alpha0, run T MALA steps, keep the last.

    Randomness comes from the streams (seed, "init"), (seed, "tune", stream)
    and (seed, "mala", stream), so identical configs give identical output.
    """
    timer = Stopwatch()
    if initial is None:
        initial = initial_configuration(
            cfg.init, cfg.n, cfg.d, derive_rng(cfg.seed, "init"), target
        )

    diagnostics = ChainDiagnostics(tuned_alpha0=cfg.alpha0)
    alpha0 = cfg.alpha0
    if cfg.tune:
        tuning = tune_step_size(
            cfg, kernel, potential, derive_rng(cfg.seed, "tune", stream), initial=initial
        )
        alpha0 = tuning.alpha0
        diagnostics.tuned_alpha0 = alpha0
        diagnostics.tuning_trace = tuning.trace

    sampler = MALASampler(kernel, potential, cfg.beta, alpha0)
    state = sampler.initial_state(initial)
    state, diagnostics = sampler.run(
        state,
        cfg.iterations,
        derive_rng(cfg.seed, "mala", stream),
        diagnostics=diagnostics,
        record_every=cfg.record_every,
        snapshots=cfg.snapshots,
        iteration_offset=iteration_offset,
    )

    if diagnostics.nonfinite_proposals:
        logger.warning(
            f"{diagnostics.nonfinite_proposals} non-finite MALA proposals auto-rejected "
            f"(beta={cfg.beta:.3g})"
        )
    low, high = SamplerDefaults.ACCEPTANCE_BAND
    if cfg.tune and not low - 0.15 <= diagnostics.acceptance_rate <= high + 0.15:
        logger.warning(
            f"Run acceptance {diagnostics.acceptance_rate:.3f} drifted away from the tuned band"
        )
    logger.info(
        f"Gibbs run n={cfg.n} d={cfg.d} beta={cfg.beta:.3g} T={cfg.iterations}: "
        f"acceptance {diagnostics.acceptance_rate:.3f}, energy "
        f"{diagnostics.energy_trace[0]:.6g} -> {diagnostics.energy_trace[-1]:.6g} "
        f"in {timer.elapsed():.1f}s"
    )
    return ParticleConfiguration(state.points), diagnostics
