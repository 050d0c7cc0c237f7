"""Shared plumbing: exceptions, RNG streams, timing."""

from .exceptions import (
    ConfigIssue,
    ConfigurationError,
    RenderError,
    RepulseQuadError,
    SamplingError,
    StorageError,
    TuningError,
    ValidationError,
)
from .rng import derive_rng, derive_seed
from .timing import Stopwatch

__all__ = [
    "ConfigIssue",
    "ConfigurationError",
    "RenderError",
    "RepulseQuadError",
    "SamplingError",
    "StorageError",
    "TuningError",
    "ValidationError",
    "derive_rng",
    "derive_seed",
    "Stopwatch",
]
