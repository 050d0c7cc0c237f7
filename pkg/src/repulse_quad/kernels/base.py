"""Radial interaction kernels.

Every kernel is written as K(x, y) = w * k(|x - y|^2) for a scalar profile k, so
that values, gradients in the first argument and batched Gram matrices all come
from k and its derivative k'. The gradient is

    grad_x K(x, y) = 2 w k'(|x - y|^2) (x - y).
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from ..common.exceptions import ValidationError

logger = logging.getLogger(__name__)


class KernelFamily(str, Enum):
    """Available kernel families"""

    GAUSSIAN = "gaussian"
    TRUNCATED_RIESZ = "truncated_riesz"
    TRUNCATED_LOG = "truncated_log"
    TRUNCATED_MULTIQUADRIC = "truncated_multiquadric"


TRUNCATED_FAMILIES = {
    KernelFamily.TRUNCATED_RIESZ,
    KernelFamily.TRUNCATED_LOG,
    KernelFamily.TRUNCATED_MULTIQUADRIC,
}


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family and parameters.

    lengthscale is used by the Gaussian family, epsilon by the truncated ones,
    exponent by Riesz/multiquadric (Riesz defaults to (d - 2) / 2, multiquadric
    to 1/2). weight scales the whole kernel; weight 0 gives K = 0.
    """

    family: KernelFamily
    dimension: int
    lengthscale: float = 1.0
    epsilon: Optional[float] = None
    exponent: Optional[float] = None
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", KernelFamily(self.family))
        if self.dimension < 1:
            raise ValidationError(f"Kernel dimension must be >= 1, got {self.dimension}")
        if not self.lengthscale > 0:
            raise ValidationError(f"Lengthscale must be positive, got {self.lengthscale}")
        if self.weight < 0 or not np.isfinite(self.weight):
            raise ValidationError(f"Kernel weight must be finite and >= 0, got {self.weight}")
        if self.family in TRUNCATED_FAMILIES:
            if self.epsilon is None or not self.epsilon > 0:
                raise ValidationError(
                    f"{self.family.value} kernel needs a positive epsilon, got {self.epsilon}"
                )
        if self.family == KernelFamily.TRUNCATED_MULTIQUADRIC:
            if self.exponent is not None and not self.exponent > 0:
                raise ValidationError(
                    f"Multiquadric exponent must be positive, got {self.exponent}"
                )

    @property
    def resolved_exponent(self) -> float:
        """Exponent with the family default applied"""
        if self.exponent is not None:
            return float(self.exponent)
        if self.family == KernelFamily.TRUNCATED_RIESZ:
            return (self.dimension - 2) / 2
        return 0.5


class BaseKernel(ABC):
    """Base class for all radial kernels"""

    family: ClassVar[KernelFamily]
    description: ClassVar[str] = "Base kernel class"

    def __init__(self, spec: KernelSpec):
        if spec.family != self.family:
            raise ValidationError(
                f"{type(self).__name__} cannot be built from a {spec.family.value} spec"
            )
        self.spec = spec
        self.dimension = spec.dimension
        self.weight = float(spec.weight)

    @abstractmethod
    def _profile(self, sq_dist: np.ndarray) -> np.ndarray:
        """k(q) for squared distances q"""
        pass

    @abstractmethod
    def _profile_derivative(self, sq_dist: np.ndarray) -> np.ndarray:
        """k'(q) for squared distances q"""
        pass

    @abstractmethod
    def _diagonal(self) -> float:
        """k(0), the unweighted value on the diagonal"""
        pass

    def _check_point(self, x: np.ndarray, name: str) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValidationError(
                f"{name} must have shape ({self.dimension},), got {x.shape}"
            )
        return x

    def _check_points(self, X: np.ndarray, name: str) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dimension:
            raise ValidationError(
                f"{name} must have shape (n, {self.dimension}), got {X.shape}"
            )
        return X

    def evaluate(self, x: np.ndarray, y: np.ndarray) -> float:
        """K(x, y)"""
        x = self._check_point(x, "x")
        y = self._check_point(y, "y")
        diff = x - y
        return float(self.weight * self._profile(np.asarray(diff @ diff)))

    def grad1(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Gradient of K(x, y) with respect to x"""
        x = self._check_point(x, "x")
        y = self._check_point(y, "y")
        diff = x - y
        slope = self._profile_derivative(np.asarray(diff @ diff))
        return 2.0 * self.weight * slope * diff

    def diag_bound(self) -> float:
        """sup_x K(x, x); radial kernels are constant on the diagonal"""
        return float(self.weight * self._diagonal())

    def gram(self, X: np.ndarray, Y: Optional[np.ndarray] = None) -> np.ndarray:
        """Matrix of K(x_i, y_j); Y defaults to X"""
        X = self._check_points(X, "X")
        Y = X if Y is None else self._check_points(Y, "Y")
        sq_dist = cdist(X, Y, "sqeuclidean")
        return self.weight * self._profile(sq_dist)

    def pair_gradient_sum(
        self, X: np.ndarray, Y: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """Row i is sum_j grad_1 K(x_i, y_j).

        With Y omitted the sum runs over j != i of the same point set.
        """
        X = self._check_points(X, "X")
        exclude_self = Y is None
        Y = X if Y is None else self._check_points(Y, "Y")
        slopes = self._profile_derivative(cdist(X, Y, "sqeuclidean"))
        if exclude_self:
            np.fill_diagonal(slopes, 0.0)
        row_sums = slopes.sum(axis=1)
        return 2.0 * self.weight * (row_sums[:, None] * X - slopes @ Y)

    def cross_interactions(
        self, X: np.ndarray, Y: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Gram matrix K(x_i, y_j) and row sums sum_j grad_1 K(x_i, y_j) from one distance pass"""
        X = self._check_points(X, "X")
        Y = self._check_points(Y, "Y")
        sq_dist = cdist(X, Y, "sqeuclidean")
        gram = self.weight * self._profile(sq_dist)
        slopes = self._profile_derivative(sq_dist)
        gradient = 2.0 * self.weight * (slopes.sum(axis=1)[:, None] * X - slopes @ Y)
        return gram, gradient

    def self_interactions(self, X: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Gram matrix of X and sum_{j != i} grad_1 K(x_i, x_j), sharing one distance pass"""
        X = self._check_points(X, "X")
        sq_dist = cdist(X, X, "sqeuclidean")
        gram = self.weight * self._profile(sq_dist)
        slopes = self._profile_derivative(sq_dist)
        np.fill_diagonal(slopes, 0.0)
        gradient = 2.0 * self.weight * (slopes.sum(axis=1)[:, None] * X - slopes @ X)
        return gram, gradient

    def describe(self) -> dict:
        """Kernel parameters as a plain dictionary"""
        return {
            "family": self.family.value,
            "dimension": self.dimension,
            "weight": self.weight,
            "diag_bound": self.diag_bound(),
            "description": self.description,
        }
