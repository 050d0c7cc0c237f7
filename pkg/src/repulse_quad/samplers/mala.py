"""Metropolis-adjusted Langevin moves on whole configurations.

Proposal (step size alpha = alpha0 / beta):

    y ~ N(x - alpha * beta * grad H(x), 2 alpha I)

accepted with probability min(1, exp(-beta (H(y) - H(x))) q(x | y) / q(y | x)).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..common.exceptions import ValidationError
from ..core.config import GibbsRunConfig
from ..embedding.potential import Potential
from ..energy.configuration import EnergyBreakdown, ParticleConfiguration
from ..energy.hamiltonian import energy_and_gradient
from ..kernels.base import BaseKernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainState:
    """Configuration with its cached energy and gradient"""

    points: np.ndarray
    energy: EnergyBreakdown
    gradient: np.ndarray

    @property
    def is_finite(self) -> bool:
        return bool(np.isfinite(self.energy.total) and np.all(np.isfinite(self.gradient)))


@dataclass(frozen=True)
class StepOutcome:
    """Result of one MALA transition"""

    state: ChainState
    accepted: bool
    finite: bool


@dataclass
class ChainDiagnostics:
    """Acceptance, energy trace and tuning record of a Gibbs run"""

    steps: int = 0
    accepted: int = 0
    nonfinite_proposals: int = 0
    tuned_alpha0: float = 0.0
    energy_trace: List[float] = field(default_factory=list)
    tuning_trace: List[Tuple[float, float]] = field(default_factory=list)
    snapshots: Dict[int, np.ndarray] = field(default_factory=dict)
    rungs: List["ChainDiagnostics"] = field(default_factory=list)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.steps if self.steps else 0.0

    def record_step(self, outcome: StepOutcome) -> None:
        self.steps += 1
        if outcome.accepted:
            self.accepted += 1
        if not outcome.finite:
            self.nonfinite_proposals += 1

    def summary(self) -> Dict[str, float]:
        """Scalar diagnostics for reports"""
        return {
            "acceptance_rate": self.acceptance_rate,
            "tuned_alpha0": self.tuned_alpha0,
            "steps": self.steps,
            "nonfinite_proposals": self.nonfinite_proposals,
            "initial_energy": self.energy_trace[0] if self.energy_trace else float("nan"),
            "final_energy": self.energy_trace[-1] if self.energy_trace else float("nan"),
        }


class MALASampler:
    """MALA kernel for the Gibbs measure exp(-beta H_n)"""

    def __init__(
        self,
        kernel: BaseKernel,
        potential: Potential,
        beta: float,
        alpha0: float,
    ):
        if not beta > 0:
            raise ValidationError(f"beta must be positive, got {beta}")
        if not alpha0 > 0:
            raise ValidationError(f"alpha0 must be positive, got {alpha0}")
        self.kernel = kernel
        self.potential = potential
        self.beta = float(beta)
        self.alpha0 = float(alpha0)
        self.step_size = self.alpha0 / self.beta

    def evaluate(self, points: np.ndarray) -> ChainState:
        """Energy and gradient at raw points"""
        energy, gradient = energy_and_gradient(points, self.kernel, self.potential)
        return ChainState(points=points, energy=energy, gradient=gradient)

    def initial_state(self, configuration: ParticleConfiguration) -> ChainState:
        state = self.evaluate(np.array(configuration.points))
        if not state.is_finite:
            raise ValidationError("Initial configuration has non-finite energy or gradient")
        return state

    def drift(self, state: ChainState) -> np.ndarray:
        """Proposal mean x - alpha * beta * grad H(x)"""
        return state.points - self.alpha0 * state.gradient

    def _log_transition(self, target: np.ndarray, origin: ChainState) -> float:
        """log q(target | origin) up to the shared normalising constant"""
        residual = target - self.drift(origin)
        return -float(np.sum(residual * residual)) / (4.0 * self.step_size)

    def step(
        self,
        state: ChainState,
        rng: np.random.Generator,
        noise: Optional[np.ndarray] = None,
    ) -> StepOutcome:
        """One MH-corrected Langevin transition.

        `noise` replaces the standard normal draw (tests use zeros to inspect
        the drift); a uniform is drawn from rng either way.
        """
        if noise is None:
            noise = rng.standard_normal(state.points.shape)
        with np.errstate(divide="ignore"):
            log_uniform = float(np.log(rng.random()))
        with np.errstate(over="ignore", invalid="ignore"):
            proposal_points = self.drift(state) + np.sqrt(2.0 * self.step_size) * noise
        proposal = self.evaluate(proposal_points)

        if not (proposal.is_finite and np.all(np.isfinite(proposal_points))):
            return StepOutcome(state=state, accepted=False, finite=False)

        log_ratio = (
            -self.beta * (proposal.energy.total - state.energy.total)
            + self._log_transition(state.points, proposal)
            - self._log_transition(proposal.points, state)
        )
        if np.isnan(log_ratio):
            return StepOutcome(state=state, accepted=False, finite=False)
        if log_uniform < log_ratio:
            return StepOutcome(state=proposal, accepted=True, finite=True)
        return StepOutcome(state=state, accepted=False, finite=True)

    def run(
        self,
        state: ChainState,
        steps: int,
        rng: np.random.Generator,
        diagnostics: Optional[ChainDiagnostics] = None,
        record_every: int = 1,
        snapshots: Sequence[int] = (),
        iteration_offset: int = 0,
    ) -> Tuple[ChainState, ChainDiagnostics]:
        """Run `steps` transitions, recording energies and requested snapshots.

        Snapshot iterations are global: iteration_offset + t for t = 1..steps.
        """
        diagnostics = diagnostics if diagnostics is not None else ChainDiagnostics()
        wanted = set(snapshots)
        if not diagnostics.energy_trace:
            diagnostics.energy_trace.append(state.energy.total)
        for t in range(1, steps + 1):
            outcome = self.step(state, rng)
            diagnostics.record_step(outcome)
            state = outcome.state
            if t % record_every == 0:
                diagnostics.energy_trace.append(state.energy.total)
            if iteration_offset + t in wanted:
                diagnostics.snapshots[iteration_offset + t] = state.points.copy()
        return state, diagnostics


def mala_step(
    X: ParticleConfiguration,
    cfg: GibbsRunConfig,
    kernel: BaseKernel,
    potential: Potential,
    rng: np.random.Generator,
    noise: Optional[np.ndarray] = None,
) -> Tuple[ParticleConfiguration, bool]:
    """One MALA transition from X with step size cfg.alpha0 / cfg.beta"""
    sampler = MALASampler(kernel, potential, cfg.beta, cfg.alpha0)
    outcome = sampler.step(sampler.initial_state(X), rng, noise=noise)
    if not outcome.finite:
        logger.warning("Non-finite MALA proposal auto-rejected")
    return ParticleConfiguration(outcome.state.points), outcome.accepted
