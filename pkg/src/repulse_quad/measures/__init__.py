"""Target measures with compact support"""

from .ball import UniformBall
from .base import TargetFamily, TargetMeasure
from .gaussian import TruncatedGaussian
from .metropolis import ChainResult, random_walk_chain
from .mixture import TruncatedGaussianMixture, mixture_on_circle
from .tempered import TemperedTarget

__all__ = [
    "TargetFamily",
    "TargetMeasure",
    "UniformBall",
    "TruncatedGaussian",
    "TruncatedGaussianMixture",
    "TemperedTarget",
    "mixture_on_circle",
    "ChainResult",
    "random_walk_chain",
]
