"""Experiment report models.

A report is a grid of cells keyed by (n, method, replicate), each with its own
RNG sub-seed and a dictionary of statistics, plus a summary computed once the
grid is complete. Wall-clock runtimes stay on the in-memory cells only so the
persisted JSON of a rerun is byte-identical.
"""

import logging
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .. import __version__
from ..common.exceptions import ValidationError

logger = logging.getLogger(__name__)

CellKey = Tuple[int, str, int]


class ReportMetadata(BaseModel):
    """Provenance of a report"""

    model_config = ConfigDict(extra="forbid")

    experiment: str
    config_hash: str = ""
    seed: int
    version: str = Field(default_factory=lambda: f"v{__version__}")


class ReportCell(BaseModel):
    """Statistics of one (n, method, replicate) grid cell"""

    model_config = ConfigDict(extra="forbid")

    n: int
    method: str
    replicate: int
    sub_seed: int
    statistics: Dict[str, Optional[float]] = Field(default_factory=dict)
    runtime_s: float = Field(default=0.0, exclude=True)

    @property
    def key(self) -> CellKey:
        return (self.n, self.method, self.replicate)


class ExperimentReport(BaseModel):
    """Append-only grid of cells with a summary"""

    model_config = ConfigDict(extra="forbid")

    metadata: ReportMetadata
    cells: List[ReportCell] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)

    def append(self, cell: ReportCell) -> None:
        """Add a cell; a (n, method, replicate) key can only be written once"""
        if any(existing.key == cell.key for existing in self.cells):
            raise ValidationError(f"Report already has a cell for {cell.key}")
        self.cells.append(cell)

    def select(
        self, method: Optional[str] = None, n: Optional[int] = None
    ) -> List[ReportCell]:
        """Cells matching a method and/or n, in insertion order"""
        return [
            cell
            for cell in self.cells
            if (method is None or cell.method == method) and (n is None or cell.n == n)
        ]

    def values(self, statistic: str, method: str, n: Optional[int] = None) -> List[float]:
        """One statistic across the selected cells (missing entries skipped)"""
        return [
            cell.statistics[statistic]
            for cell in self.select(method, n)
            if cell.statistics.get(statistic) is not None
        ]

    @property
    def total_runtime_s(self) -> float:
        return sum(cell.runtime_s for cell in self.cells)
