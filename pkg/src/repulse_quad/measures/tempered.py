import numpy as np

from ..common.exceptions import SamplingError, ValidationError
from .base import TargetFamily, TargetMeasure


class TemperedTarget(TargetMeasure):
    """pi^t for 0 < t: same support as pi, flattened for t < 1"""

    family = TargetFamily.TEMPERED

    def __init__(self, base: TargetMeasure, power: float):
        if not power > 0:
            raise ValidationError(f"Tempering power must be positive, got {power}")
        super().__init__(base.dimension, base.support_radius)
        self.base = base
        self.power = float(power)

    def _log_density_rows(self, rows: np.ndarray) -> np.ndarray:
        return self.power * self.base._log_density_rows(rows)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.power == 1.0:
            return self.base.sample(rng, size)
        raise SamplingError(f"No exact sampler for a target tempered at {self.power}")

    def chain_start(self, rng: np.random.Generator) -> np.ndarray:
        # Any point of the base support is in the tempered support
        return self.base.exact_sample(rng)

    def modes(self) -> np.ndarray:
        return self.base.modes()

    def describe(self) -> dict:
        info = super().describe()
        info.update({"power": self.power, "base": self.base.describe()})
        return info
