"""Common timing utilities"""

import time
from dataclasses import dataclass, field


@dataclass
class Stopwatch:
    """Wall-clock timer for runs and experiment cells"""

    start_time: float = field(default_factory=time.perf_counter)

    def elapsed(self) -> float:
        """Seconds since start"""
        return time.perf_counter() - self.start_time
