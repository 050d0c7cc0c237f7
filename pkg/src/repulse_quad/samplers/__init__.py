"""MALA for Gibbs measures, MH baselines, tuning and annealing"""

from .annealing import anneal_ladder, build_potential, sample_gibbs_annealed
from .baseline import mh_baseline_chain
from .gibbs import sample_gibbs
from .initialization import initial_configuration
from .mala import ChainDiagnostics, ChainState, MALASampler, StepOutcome, mala_step
from .tuning import PilotChain, TuningResult, tune_alpha0, tune_step_size

__all__ = [
    "anneal_ladder",
    "build_potential",
    "sample_gibbs_annealed",
    "mh_baseline_chain",
    "sample_gibbs",
    "initial_configuration",
    "ChainDiagnostics",
    "ChainState",
    "MALASampler",
    "StepOutcome",
    "mala_step",
    "TuningResult",
    "tune_alpha0",
    "tune_step_size",
    "PilotChain",
]
