"""Experiment drivers: energy decay, variance, crystallization, concentration, multimodal"""

from .concentration import empirical_tail, run_concentration_tail
from .crystallization import nearest_neighbour_statistics, run_crystallization
from .energy_decay import run_energy_decay
from .multimodal import mode_occupancy, run_multimodal
from .reference import ReferenceSet, build_reference
from .report import ExperimentReport, ReportCell, ReportMetadata
from .runner import GridCell, build_grid, loglog_slope, run_grid
from .variance import INTEGRANDS, get_integrand, run_variance_comparison

__all__ = [
    "empirical_tail",
    "run_concentration_tail",
    "nearest_neighbour_statistics",
    "run_crystallization",
    "run_energy_decay",
    "mode_occupancy",
    "run_multimodal",
    "ReferenceSet",
    "build_reference",
    "ExperimentReport",
    "ReportCell",
    "ReportMetadata",
    "GridCell",
    "build_grid",
    "loglog_slope",
    "run_grid",
    "INTEGRANDS",
    "get_integrand",
    "run_variance_comparison",
]
