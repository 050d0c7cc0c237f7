import logging
from typing import Optional, Sequence

import numpy as np
from scipy.stats import chi2

from ..common.exceptions import SamplingError, ValidationError
from ..core.config import SamplerDefaults
from .base import TargetFamily, TargetMeasure

logger = logging.getLogger(__name__)


class TruncatedGaussian(TargetMeasure):
    """Isotropic Gaussian N(c, s^2 I) restricted to the ball B(c, r).

    The truncation is a hard indicator. log_density returns -|x - c|^2 / (2 s^2)
    inside the ball; log_normalizer gives the constant needed to mix components.
    """

    family = TargetFamily.TRUNCATED_GAUSSIAN

    def __init__(
        self,
        dimension: int,
        variance: float,
        trunc_radius: float,
        center: Optional[Sequence[float]] = None,
        rejection_budget: int = SamplerDefaults.REJECTION_BUDGET,
    ):
        center_arr = (
            np.zeros(dimension) if center is None else np.asarray(center, dtype=float)
        )
        if center_arr.shape != (dimension,):
            raise ValidationError(
                f"Center must have shape ({dimension},), got {center_arr.shape}"
            )
        if not variance > 0:
            raise ValidationError(f"Variance must be positive, got {variance}")
        if not trunc_radius > 0:
            raise ValidationError(f"Truncation radius must be positive, got {trunc_radius}")
        super().__init__(dimension, float(np.linalg.norm(center_arr)) + trunc_radius)
        self.center = center_arr
        self.variance = float(variance)
        self.trunc_radius = float(trunc_radius)
        self.rejection_budget = rejection_budget

    def log_normalizer(self) -> float:
        """log of the integral of exp(log_density)"""
        return 0.5 * self.dimension * float(np.log(2.0 * np.pi * self.variance)) + float(
            chi2.logcdf(self.trunc_radius**2 / self.variance, self.dimension)
        )

    def _log_density_rows(self, rows: np.ndarray) -> np.ndarray:
        diff = rows - self.center
        sq = np.einsum("ij,ij->i", diff, diff)
        return np.where(sq <= self.trunc_radius**2, -sq / (2.0 * self.variance), -np.inf)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Rejection sampling from the untruncated Gaussian"""
        std = np.sqrt(self.variance)
        accepted = []
        remaining = size
        attempts = 0
        max_attempts = self.rejection_budget * max(size, 1)
        while remaining > 0:
            if attempts >= max_attempts:
                raise SamplingError(
                    f"Truncated Gaussian rejection budget exceeded after {attempts} "
                    f"attempts ({size - remaining}/{size} draws accepted)"
                )
            batch = min(max(2 * remaining, 16), max_attempts - attempts)
            proposals = self.center + std * rng.standard_normal((batch, self.dimension))
            attempts += batch
            diff = proposals - self.center
            keep = proposals[np.einsum("ij,ij->i", diff, diff) <= self.trunc_radius**2]
            keep = keep[:remaining]
            accepted.append(keep)
            remaining -= len(keep)
        if attempts > 10 * size and size > 0:
            logger.warning(
                f"Truncated Gaussian sampler needed {attempts} proposals for {size} draws"
            )
        return np.concatenate(accepted, axis=0) if accepted else np.empty((0, self.dimension))

    def modes(self) -> np.ndarray:
        return self.center[None, :].copy()

    def describe(self) -> dict:
        info = super().describe()
        info.update(
            {
                "center": self.center.tolist(),
                "variance": self.variance,
                "trunc_radius": self.trunc_radius,
            }
        )
        return info
