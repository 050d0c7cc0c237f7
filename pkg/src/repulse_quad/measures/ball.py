import numpy as np

from .base import TargetFamily, TargetMeasure


class UniformBall(TargetMeasure):
    """Uniform distribution on the centred ball B(0, R)"""

    family = TargetFamily.UNIFORM_BALL

    def __init__(self, dimension: int, radius: float = 1.0):
        super().__init__(dimension, radius)
        self.radius = float(radius)

    def _log_density_rows(self, rows: np.ndarray) -> np.ndarray:
        inside = np.einsum("ij,ij->i", rows, rows) <= self.radius**2
        return np.where(inside, 0.0, -np.inf)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        # Uniform direction, radius by inverse CDF of R * U^(1/d)
        directions = rng.standard_normal((size, self.dimension))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = self.radius * rng.random(size) ** (1.0 / self.dimension)
        return directions * radii[:, None]
