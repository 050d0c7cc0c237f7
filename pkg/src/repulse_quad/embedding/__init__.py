"""Kernel embedding estimates and confining potentials"""

from .estimator import EmbeddingEstimate, estimate_embedding
from .potential import (
    EquilibratedPotential,
    Potential,
    PotentialMode,
    QuadraticPotential,
    equilibrate,
)

__all__ = [
    "EmbeddingEstimate",
    "estimate_embedding",
    "Potential",
    "PotentialMode",
    "QuadraticPotential",
    "EquilibratedPotential",
    "equilibrate",
]
