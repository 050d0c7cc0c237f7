"""Common exceptions for repulse_quad."""

from dataclasses import dataclass
from typing import List, Sequence, Tuple


class RepulseQuadError(Exception):
    """Base exception for all repulse_quad errors."""

    pass


class ValidationError(RepulseQuadError):
    """Invalid argument (dimension mismatch, out-of-range parameter)."""

    pass


@dataclass(frozen=True)
class ConfigIssue:
    """One config problem located by a JSON pointer"""

    pointer: str
    message: str

    def __str__(self) -> str:
        return f"{self.pointer or '/'}: {self.message}"


class ConfigurationError(RepulseQuadError):
    """Configuration error, carrying every issue found."""

    def __init__(self, issues: Sequence[ConfigIssue]):
        self.issues: List[ConfigIssue] = list(issues)
        super().__init__("; ".join(str(issue) for issue in self.issues))


class SamplingError(RepulseQuadError):
    """Exact sampler exhausted its rejection budget."""

    pass


class TuningError(RepulseQuadError):
    """Step-size tuning failed to reach the acceptance band."""

    def __init__(self, message: str, trace: Sequence[Tuple[float, float]]):
        self.trace: List[Tuple[float, float]] = list(trace)
        super().__init__(f"{message} (trace: {self.trace})")


class StorageError(RepulseQuadError):
    """Unreadable or malformed CSV/JSON artefact."""

    pass


class RenderError(RepulseQuadError):
    """Figure emission error."""

    pass
