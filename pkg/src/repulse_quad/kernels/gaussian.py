import numpy as np

from .base import BaseKernel, KernelFamily, KernelSpec


class GaussianKernel(BaseKernel):
    """exp(-|x - y|^2 / (2 l^2))"""

    family = KernelFamily.GAUSSIAN
    description = "Gaussian kernel with lengthscale l"

    def __init__(self, spec: KernelSpec):
        super().__init__(spec)
        self.lengthscale = float(spec.lengthscale)
        self._scale = 1.0 / (2.0 * self.lengthscale**2)

    def _profile(self, sq_dist: np.ndarray) -> np.ndarray:
        return np.exp(-sq_dist * self._scale)

    def _profile_derivative(self, sq_dist: np.ndarray) -> np.ndarray:
        return -self._scale * np.exp(-sq_dist * self._scale)

    def _diagonal(self) -> float:
        return 1.0

    def describe(self) -> dict:
        info = super().describe()
        info["lengthscale"] = self.lengthscale
        return info
