"""Discrete energies and discrepancies"""

from .configuration import EnergyBreakdown, ParticleConfiguration, as_points
from .discrepancy import (
    cross_energy,
    interaction_energy,
    kernel_total,
    mmd_squared,
    mmd_squared_to_reference,
    worst_case_error,
)
from .hamiltonian import energy_and_gradient, exact_sum, grad_hamiltonian, hamiltonian

__all__ = [
    "EnergyBreakdown",
    "ParticleConfiguration",
    "as_points",
    "hamiltonian",
    "grad_hamiltonian",
    "energy_and_gradient",
    "exact_sum",
    "interaction_energy",
    "cross_energy",
    "kernel_total",
    "mmd_squared",
    "mmd_squared_to_reference",
    "worst_case_error",
]
