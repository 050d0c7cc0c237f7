"""Confining potentials V.

The equilibrated potential makes the target the equilibrium measure of the
energy: V(z) = -U(z) + Phi(z) with Phi(z) = (|z|^2 - R^2) 1{|z| > R}, where U is
the (estimated) kernel embedding and B(0, R) contains the target's support.
"""

import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import ClassVar, Tuple, Union

import numpy as np

from ..common.exceptions import ValidationError
from ..core.config import EmbeddingSettings
from ..kernels.base import BaseKernel
from ..measures.base import TargetMeasure
from .estimator import EmbeddingEstimate, estimate_embedding

logger = logging.getLogger(__name__)


class PotentialMode(str, Enum):
    EXPLICIT = "explicit"
    EQUILIBRATED = "equilibrated"


class Potential(ABC):
    """Base class for confining potentials"""

    mode: ClassVar[PotentialMode]

    def __init__(self, dimension: int):
        self.dimension = dimension

    def _rows(self, z: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(z, dtype=float))
        if rows.ndim != 2 or rows.shape[1] != self.dimension:
            raise ValidationError(
                f"Expected points of dimension {self.dimension}, got shape {np.shape(z)}"
            )
        return rows

    @abstractmethod
    def _values(self, rows: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _gradients(self, rows: np.ndarray) -> np.ndarray:
        pass

    def value(self, z: np.ndarray) -> Union[float, np.ndarray]:
        """V at a point (float) or at each row (array)"""
        values = self._values(self._rows(z))
        return float(values[0]) if np.ndim(z) == 1 else values

    def gradient(self, z: np.ndarray) -> np.ndarray:
        """grad V, same leading shape as z"""
        grads = self._gradients(self._rows(z))
        return grads[0] if np.ndim(z) == 1 else grads

    def value_and_gradient(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """V and grad V at each row of an (n, d) array"""
        rows = self._rows(z)
        return self._values(rows), self._gradients(rows)


class QuadraticPotential(Potential):
    """V(x) = c |x|^2; c = 1/2 by default, c = 0 gives V = 0"""

    mode = PotentialMode.EXPLICIT

    def __init__(self, dimension: int, scale: float = 0.5):
        super().__init__(dimension)
        if scale < 0:
            raise ValidationError(f"Quadratic scale must be >= 0, got {scale}")
        self.scale = float(scale)

    def _values(self, rows: np.ndarray) -> np.ndarray:
        return self.scale * np.einsum("ij,ij->i", rows, rows)

    def _gradients(self, rows: np.ndarray) -> np.ndarray:
        return 2.0 * self.scale * rows


class EquilibratedPotential(Potential):
    """V(z) = -U(z) + (|z|^2 - R^2) 1{|z| > R}.

    V is continuous on the sphere |z| = R but not differentiable there; the
    gradient uses the inside branch on the sphere itself.
    """

    mode = PotentialMode.EQUILIBRATED

    def __init__(self, embedding: EmbeddingEstimate, radius: float):
        super().__init__(embedding.kernel.dimension)
        if not radius > 0:
            raise ValidationError(f"Confinement radius must be positive, got {radius}")
        self.embedding = embedding
        self.radius = float(radius)

    def _outside(self, rows: np.ndarray) -> np.ndarray:
        sq = np.einsum("ij,ij->i", rows, rows)
        return sq > self.radius**2, sq

    def _values(self, rows: np.ndarray) -> np.ndarray:
        outside, sq = self._outside(rows)
        confinement = np.where(outside, sq - self.radius**2, 0.0)
        return -self.embedding.value(rows) + confinement

    def _gradients(self, rows: np.ndarray) -> np.ndarray:
        outside, _ = self._outside(rows)
        return -self.embedding.gradient(rows) + 2.0 * rows * outside[:, None]

    def value_and_gradient(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        rows = self._rows(z)
        outside, sq = self._outside(rows)
        embedding, embedding_grad = self.embedding.value_and_gradient(rows)
        values = -embedding + np.where(outside, sq - self.radius**2, 0.0)
        return values, -embedding_grad + 2.0 * rows * outside[:, None]


def equilibrate(
    target: TargetMeasure,
    kernel: BaseKernel,
    settings: EmbeddingSettings,
    rng: np.random.Generator,
) -> EquilibratedPotential:
    """Estimate the embedding of `target` and build its equilibrated potential"""
    embedding = estimate_embedding(
        target, kernel, settings.size, settings.proposal_std, rng
    )
    return EquilibratedPotential(embedding, target.support_radius)
