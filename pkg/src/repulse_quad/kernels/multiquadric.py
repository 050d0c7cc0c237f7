import numpy as np

from .base import BaseKernel, KernelFamily, KernelSpec


class TruncatedMultiquadricKernel(BaseKernel):
    """(1 + |x - y|^2 / eps^2)^(-s), normalised to 1 on the diagonal"""

    family = KernelFamily.TRUNCATED_MULTIQUADRIC
    description = "Inverse multiquadric kernel"

    def __init__(self, spec: KernelSpec):
        super().__init__(spec)
        self.epsilon = float(spec.epsilon)
        self.exponent = spec.resolved_exponent
        self._inv_eps_sq = 1.0 / self.epsilon**2

    def _profile(self, sq_dist: np.ndarray) -> np.ndarray:
        return (1.0 + sq_dist * self._inv_eps_sq) ** (-self.exponent)

    def _profile_derivative(self, sq_dist: np.ndarray) -> np.ndarray:
        base = 1.0 + sq_dist * self._inv_eps_sq
        return -self.exponent * self._inv_eps_sq * base ** (-self.exponent - 1.0)

    def _diagonal(self) -> float:
        return 1.0

    def describe(self) -> dict:
        info = super().describe()
        info.update({"epsilon": self.epsilon, "exponent": self.exponent})
        return info
