import logging
from typing import Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from ..common.exceptions import ValidationError
from .base import TargetFamily, TargetMeasure
from .gaussian import TruncatedGaussian

logger = logging.getLogger(__name__)


class TruncatedGaussianMixture(TargetMeasure):
    """Finite mixture of truncated Gaussians.

    Each component is normalised before weighting, so unequal variances or
    truncation radii still give the intended mixture proportions.
    """

    family = TargetFamily.TRUNCATED_GAUSSIAN_MIXTURE

    def __init__(
        self,
        components: Sequence[TruncatedGaussian],
        weights: Optional[Sequence[float]] = None,
    ):
        if not components:
            raise ValidationError("Mixture needs at least one component")
        dimension = components[0].dimension
        if any(component.dimension != dimension for component in components):
            raise ValidationError("Mixture components must share a dimension")
        if weights is None:
            weights = np.full(len(components), 1.0 / len(components))
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (len(components),):
            raise ValidationError(
                f"Expected {len(components)} weights, got shape {weights.shape}"
            )
        if np.any(weights < 0) or not np.isclose(weights.sum(), 1.0, atol=1e-12):
            raise ValidationError(
                f"Mixture weights must be non-negative and sum to 1, got {weights.tolist()}"
            )
        super().__init__(dimension, max(c.support_radius for c in components))
        self.components = list(components)
        self.weights = weights
        self._log_normalizers = np.array([c.log_normalizer() for c in self.components])

    def _log_density_rows(self, rows: np.ndarray) -> np.ndarray:
        per_component = np.stack(
            [c._log_density_rows(rows) for c in self.components], axis=1
        )
        scale = self.weights * np.exp(-(self._log_normalizers - self._log_normalizers.min()))
        with np.errstate(divide="ignore", invalid="ignore"):
            values = logsumexp(per_component, axis=1, b=scale[None, :])
        return np.where(np.isnan(values), -np.inf, values)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        labels = rng.choice(len(self.components), size=size, p=self.weights)
        draws = np.empty((size, self.dimension))
        for index, component in enumerate(self.components):
            slots = np.flatnonzero(labels == index)
            if len(slots):
                draws[slots] = component.sample(rng, len(slots))
        return draws

    def modes(self) -> np.ndarray:
        return np.stack([c.center for c in self.components])

    def assign_modes(self, points: np.ndarray) -> np.ndarray:
        """Index of the nearest component centre for each point"""
        rows, _ = self._as_rows(points)
        centers = self.modes()
        sq = ((rows[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        return np.argmin(sq, axis=1)

    def describe(self) -> dict:
        info = super().describe()
        info.update(
            {
                "weights": self.weights.tolist(),
                "components": [c.describe() for c in self.components],
            }
        )
        return info


def mixture_on_circle(
    count: int,
    trunc_radius: float = 0.5,
    variance: float = 0.1,
    circle_radius: float = 1.0,
) -> TruncatedGaussianMixture:
    """Balanced mixture of 2D truncated Gaussians with centres evenly spaced on a circle.

    Centre j is circle_radius * (cos 2 pi j / count, sin 2 pi j / count).
    """
    if count < 1:
        raise ValidationError(f"Mixture needs count >= 1, got {count}")
    angles = 2.0 * np.pi * np.arange(count) / count
    centers = circle_radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    components = [
        TruncatedGaussian(2, variance=variance, trunc_radius=trunc_radius, center=c)
        for c in centers
    ]
    logger.debug(f"Built {count}-component circle mixture, circle radius {circle_radius}")
    return TruncatedGaussianMixture(components)
