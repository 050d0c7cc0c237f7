"""Target measures with compact support.

Densities are unnormalised: MH ratios, annealing and the embedding estimator
never need the normalising constant. log_density is -inf outside the support.
"""

import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import ClassVar, Tuple, Union

import numpy as np

from ..common.exceptions import ValidationError

logger = logging.getLogger(__name__)


class TargetFamily(str, Enum):
    """Available target families"""

    UNIFORM_BALL = "uniform_ball"
    TRUNCATED_GAUSSIAN = "truncated_gaussian"
    TRUNCATED_GAUSSIAN_MIXTURE = "truncated_gaussian_mixture"
    TEMPERED = "tempered"


class TargetMeasure(ABC):
    """Base class for target distributions pi"""

    family: ClassVar[TargetFamily]

    def __init__(self, dimension: int, support_radius: float):
        if dimension < 1:
            raise ValidationError(f"Target dimension must be >= 1, got {dimension}")
        if not support_radius > 0 or not np.isfinite(support_radius):
            raise ValidationError(
                f"Support radius must be finite and positive, got {support_radius}"
            )
        self.dimension = dimension
        self.support_radius = float(support_radius)

    def _as_rows(self, x: np.ndarray) -> Tuple[np.ndarray, bool]:
        """Coerce a point or a stack of points to shape (n, d)"""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        rows = x[None, :] if single else x
        if rows.ndim != 2 or rows.shape[1] != self.dimension:
            raise ValidationError(
                f"Expected points of dimension {self.dimension}, got shape {x.shape}"
            )
        return rows, single

    @abstractmethod
    def _log_density_rows(self, rows: np.ndarray) -> np.ndarray:
        """Unnormalised log density for each row"""
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """size exact draws, shape (size, d)"""
        pass

    def log_density(self, x: np.ndarray) -> Union[float, np.ndarray]:
        """Unnormalised log density of a point (float) or of rows (array)"""
        rows, single = self._as_rows(x)
        values = self._log_density_rows(rows)
        return float(values[0]) if single else values

    def exact_sample(self, rng: np.random.Generator) -> np.ndarray:
        """One exact draw from the target"""
        return self.sample(rng, 1)[0]

    def chain_start(self, rng: np.random.Generator) -> np.ndarray:
        """Starting state for MH chains targeting this measure"""
        return self.exact_sample(rng)

    def contains(self, x: np.ndarray) -> Union[bool, np.ndarray]:
        """Whether the density is positive at x"""
        values = self.log_density(x)
        return bool(np.isfinite(values)) if np.ndim(values) == 0 else np.isfinite(values)

    def modes(self) -> np.ndarray:
        """Mode centres, shape (k, d)"""
        return np.zeros((1, self.dimension))

    def tempered(self, power: float) -> "TargetMeasure":
        """The tempered target pi^power (pi itself when power is 1)"""
        from .tempered import TemperedTarget

        if power == 1.0:
            return self
        return TemperedTarget(self, power)

    def describe(self) -> dict:
        """Target parameters as a plain dictionary"""
        return {
            "family": self.family.value,
            "dimension": self.dimension,
            "support_radius": self.support_radius,
        }
