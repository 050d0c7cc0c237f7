import numpy as np

from .base import BaseKernel, KernelFamily, KernelSpec


class TruncatedRieszKernel(BaseKernel):
    """(|x - y|^2 + eps^2)^(-s), s defaulting to (d - 2) / 2"""

    family = KernelFamily.TRUNCATED_RIESZ
    description = "Riesz kernel regularised at the origin by eps"

    def __init__(self, spec: KernelSpec):
        super().__init__(spec)
        self.epsilon = float(spec.epsilon)
        self.exponent = spec.resolved_exponent
        self._eps_sq = self.epsilon**2

    def _profile(self, sq_dist: np.ndarray) -> np.ndarray:
        return (sq_dist + self._eps_sq) ** (-self.exponent)

    def _profile_derivative(self, sq_dist: np.ndarray) -> np.ndarray:
        return -self.exponent * (sq_dist + self._eps_sq) ** (-self.exponent - 1.0)

    def _diagonal(self) -> float:
        return self._eps_sq ** (-self.exponent)

    def describe(self) -> dict:
        info = super().describe()
        info.update({"epsilon": self.epsilon, "exponent": self.exponent})
        return info
