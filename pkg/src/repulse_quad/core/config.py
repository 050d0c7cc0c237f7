import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, ClassVar, Dict, Optional, Tuple

from ..common.exceptions import ValidationError

logger = logging.getLogger(__name__)


@dataclass
class SamplerDefaults:
    """Numerical defaults shared by samplers and experiments"""

    # Step-size tuning
    PILOT_STEPS: ClassVar[int] = 200
    ACCEPTANCE_BAND: ClassVar[Tuple[float, float]] = (0.4, 0.6)
    MAX_TUNING_ROUNDS: ClassVar[int] = 30
    CONFIRMATION_FACTOR: ClassVar[int] = 4  # confirmation pilot length, in pilot lengths

    # Kernel embedding and baselines
    DEFAULT_EMBEDDING_SIZE: ClassVar[int] = 1000
    DEFAULT_PROPOSAL_VARIANCE: ClassVar[float] = 0.05
    DEFAULT_REFERENCE_LENGTH: ClassVar[int] = 10_000

    # Gibbs runs
    DEFAULT_ALPHA0: ClassVar[float] = 1.0
    DEFAULT_ITERATIONS: ClassVar[int] = 5000
    DEFAULT_SCHEDULE: ClassVar[str] = "n^2"
    DEFAULT_ANNEAL_LEVELS: ClassVar[int] = 10
    WARM_MODES_VARIANCE: ClassVar[float] = 0.1

    # Exact samplers
    REJECTION_BUDGET: ClassVar[int] = 10_000

    @classmethod
    def get_all_defaults(cls) -> Dict[str, Any]:
        """Get all default values as a dictionary"""
        return {
            name: value
            for name, value in vars(cls).items()
            if name.isupper() and isinstance(value, (int, float, str, tuple))
        }


_SCHEDULE_PATTERN = re.compile(r"^n\^\(?(\d+(?:\.\d+)?(?:/\d+)?)\)?$")


def schedule_exponent(schedule: str) -> float:
    """Exponent p of a schedule tag "n^p" ("n^3/2", "n^1.5", "n^2", ...)"""
    match = _SCHEDULE_PATTERN.match(schedule.replace(" ", ""))
    if match is None:
        raise ValidationError(
            f"Unknown temperature schedule {schedule!r}; expected 'n^p' or 'explicit'"
        )
    return float(Fraction(match.group(1)))


def resolve_beta(schedule: str, n: int, value: Optional[float] = None) -> float:
    """Inverse temperature beta_n for a schedule tag"""
    if schedule == "explicit":
        if value is None or not value > 0:
            raise ValidationError(f"Explicit schedule needs a positive beta, got {value}")
        return float(value)
    return float(n) ** schedule_exponent(schedule)


class InitKind(str, Enum):
    """How the MALA chain is initialised"""

    COLD_GAUSSIAN = "cold_gaussian"
    WARM_FROM_TARGET = "warm_from_target"
    WARM_MODES = "warm_modes"
    FROM_FILE = "from_file"


@dataclass(frozen=True)
class InitSpec:
    """Initial configuration recipe"""

    kind: InitKind = InitKind.COLD_GAUSSIAN
    mean: float = 0.0
    std: float = 1.0
    path: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", InitKind(self.kind))
        self.validate()

    def validate(self) -> None:
        if self.std < 0:
            raise ValidationError(f"Initial std must be >= 0, got {self.std}")
        if self.kind == InitKind.FROM_FILE and not self.path:
            raise ValidationError("from_file initialisation needs a path")


@dataclass(frozen=True)
class EmbeddingSettings:
    """Size and proposal of the MH chain estimating the kernel embedding"""

    size: int = SamplerDefaults.DEFAULT_EMBEDDING_SIZE
    proposal_std: float = SamplerDefaults.DEFAULT_PROPOSAL_VARIANCE**0.5

    def __post_init__(self):
        if self.size < 1:
            raise ValidationError(f"Embedding size must be >= 1, got {self.size}")
        if self.proposal_std < 0:
            raise ValidationError(
                f"Embedding proposal std must be >= 0, got {self.proposal_std}"
            )


@dataclass
class GibbsRunConfig:
    """One approximate draw from the Gibbs measure.

    beta is beta_n, computed from `schedule` unless the schedule is "explicit".
    The MALA step size is alpha = alpha0 / beta.
    """

    n: int
    d: int
    schedule: str = SamplerDefaults.DEFAULT_SCHEDULE
    beta_value: Optional[float] = None
    alpha0: float = SamplerDefaults.DEFAULT_ALPHA0
    iterations: int = SamplerDefaults.DEFAULT_ITERATIONS
    seed: int = 0
    init: InitSpec = field(default_factory=InitSpec)
    anneal_levels: Optional[int] = None
    tune: bool = True
    pilot_steps: int = SamplerDefaults.PILOT_STEPS
    record_every: int = 1
    snapshots: Tuple[int, ...] = ()
    beta: float = field(init=False)

    def __post_init__(self):
        self.snapshots = tuple(sorted(set(self.snapshots)))
        self.validate()
        self.beta = resolve_beta(self.schedule, self.n, self.beta_value)

    def validate(self) -> None:
        """Validate run settings"""
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if self.d < 1:
            raise ValidationError(f"d must be >= 1, got {self.d}")
        if not self.alpha0 > 0:
            raise ValidationError(f"alpha0 must be positive, got {self.alpha0}")
        if self.iterations < 1:
            raise ValidationError(f"Iteration count must be >= 1, got {self.iterations}")
        if self.seed < 0 or self.seed >= 2**64:
            raise ValidationError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.anneal_levels is not None and self.anneal_levels < 1:
            raise ValidationError(
                f"Annealing needs at least one level, got {self.anneal_levels}"
            )
        if self.pilot_steps < 1:
            raise ValidationError(f"Pilot steps must be >= 1, got {self.pilot_steps}")
        if self.record_every < 1:
            raise ValidationError(f"record_every must be >= 1, got {self.record_every}")
        if any(s < 1 for s in self.snapshots):
            raise ValidationError(f"Snapshot iterations must be >= 1, got {self.snapshots}")

    @property
    def step_size(self) -> float:
        """MALA step size alpha = alpha0 / beta"""
        return self.alpha0 / self.beta

    def with_updates(self, **updates: Any) -> "GibbsRunConfig":
        """Copy with some fields replaced (beta is recomputed)"""
        values = {
            name: getattr(self, name)
            for name in self.__dataclass_fields__
            if self.__dataclass_fields__[name].init
        }
        values.update(updates)
        return GibbsRunConfig(**values)
