import numpy as np

from .base import BaseKernel, KernelFamily, KernelSpec


class TruncatedLogKernel(BaseKernel):
    """-log(|x - y|^2 + eps^2).

    Negative once |x - y|^2 + eps^2 > 1; only the crystallisation and multimodal
    studies use it.
    """

    family = KernelFamily.TRUNCATED_LOG
    description = "Logarithmic (2D Coulomb) kernel regularised by eps"

    def __init__(self, spec: KernelSpec):
        super().__init__(spec)
        self.epsilon = float(spec.epsilon)
        self._eps_sq = self.epsilon**2

    def _profile(self, sq_dist: np.ndarray) -> np.ndarray:
        return -np.log(sq_dist + self._eps_sq)

    def _profile_derivative(self, sq_dist: np.ndarray) -> np.ndarray:
        return -1.0 / (sq_dist + self._eps_sq)

    def _diagonal(self) -> float:
        return -2.0 * float(np.log(self.epsilon))

    def describe(self) -> dict:
        info = super().describe()
        info["epsilon"] = self.epsilon
        return info
