"""Tempered annealing over a ladder of targets pi^(t_k), t_k = k / l.

Each rung re-estimates the kernel embedding of its tempered target, rebuilds
the equilibrated potential and runs T / l MALA steps from the previous rung's
final configuration. The last rung targets pi itself.
"""

import logging
from typing import List, Optional, Tuple

from ..common.exceptions import ValidationError
from ..common.rng import derive_rng
from ..core.config import EmbeddingSettings, GibbsRunConfig
from ..embedding.potential import EquilibratedPotential, equilibrate
from ..energy.configuration import ParticleConfiguration
from ..kernels.base import BaseKernel
from ..measures.base import TargetMeasure
from .gibbs import sample_gibbs
from .mala import ChainDiagnostics

logger = logging.getLogger(__name__)


def anneal_ladder(levels: int) -> List[float]:
    """Tempering powers k / levels for k = 1..levels"""
    if levels < 1:
        raise ValidationError(f"Annealing needs at least one level, got {levels}")
    return [k / levels for k in range(1, levels + 1)]


def build_potential(
    target: TargetMeasure,
    kernel: BaseKernel,
    settings: EmbeddingSettings,
    seed: int,
    index: int = 0,
) -> EquilibratedPotential:
    """Equilibrated potential from the embedding stream (seed, "embedding", index)"""
    return equilibrate(target, kernel, settings, derive_rng(seed, "embedding", index))


def _rung_iterations(total: int, levels: int) -> List[int]:
    base = total // levels
    if base < 1:
        raise ValidationError(
            f"{total} iterations cannot be split across {levels} annealing levels"
        )
    return [base] * (levels - 1) + [total - base * (levels - 1)]


def sample_gibbs_annealed(
    cfg: GibbsRunConfig,
    kernel: BaseKernel,
    target: TargetMeasure,
    settings: EmbeddingSettings,
    initial: Optional[ParticleConfiguration] = None,
) -> Tuple[ParticleConfiguration, ChainDiagnostics]:
    """Gibbs draw through the annealing ladder of cfg.anneal_levels rungs (1 when unset)"""
    levels = cfg.anneal_levels or 1
    ladder = anneal_ladder(levels)
    iterations = _rung_iterations(cfg.iterations, levels)

    combined = ChainDiagnostics()
    configuration = initial
    done = 0
    for index, (power, steps) in enumerate(zip(ladder, iterations)):
        potential = build_potential(
            target.tempered(power), kernel, settings, cfg.seed, index
        )
        rung_cfg = cfg.with_updates(iterations=steps, anneal_levels=None)
        configuration, rung = sample_gibbs(
            rung_cfg,
            kernel,
            potential,
            target=target,
            initial=configuration,
            stream=index,
            iteration_offset=done,
        )
        done += steps
        logger.info(
            f"Annealing rung {index + 1}/{levels} (t={power:.2f}): "
            f"acceptance {rung.acceptance_rate:.3f}"
        )

        combined.rungs.append(rung)
        combined.steps += rung.steps
        combined.accepted += rung.accepted
        combined.nonfinite_proposals += rung.nonfinite_proposals
        combined.tuned_alpha0 = rung.tuned_alpha0
        combined.tuning_trace.extend(rung.tuning_trace)
        combined.energy_trace.extend(rung.energy_trace)
        combined.snapshots.update(rung.snapshots)

    return configuration, combined
