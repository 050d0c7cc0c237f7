from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from ..common.exceptions import ValidationError


@dataclass(frozen=True)
class ParticleConfiguration:
    """Ordered n points in R^d (one MALA state)"""

    points: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[0] < 1:
            raise ValidationError(
                f"Configuration needs shape (n, d) with n >= 1, got {points.shape}"
            )
        if not np.all(np.isfinite(points)):
            raise ValidationError("Configuration contains non-finite coordinates")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def permuted(self, order: Sequence[int]) -> "ParticleConfiguration":
        """Same points in another order"""
        return ParticleConfiguration(self.points[np.asarray(order)])

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class EnergyBreakdown:
    """The two summands of H_n and their sum"""

    interaction: float
    confinement: float
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", self.interaction + self.confinement)


PointsLike = Union[ParticleConfiguration, np.ndarray]


def as_points(X: PointsLike) -> np.ndarray:
    """Point array of a configuration or array-like"""
    if isinstance(X, ParticleConfiguration):
        return X.points
    return ParticleConfiguration(X).points
