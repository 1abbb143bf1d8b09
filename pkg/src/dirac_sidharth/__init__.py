"""Dirac equation with a quartic dispersion correction: gamma algebra, plane waves, wavepacket dynamics."""
from .algebra import GammaSet, build_gamma_set, clifford_residual, dirac_weyl_transform, kron, pauli
from .dispersion import ModelParams, ScaleCatalog, energy_branches, energy_squared, group_velocity, snyder_energy
from .errors import DomainError, NumericError, UsageError, ValidationError
from .plane_wave import MomentumVector, PlaneWaveSolution, positive_energy_solution, residual

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "GammaSet",
    "ModelParams",
    "MomentumVector",
    "NumericError",
    "PlaneWaveSolution",
    "ScaleCatalog",
    "UsageError",
    "ValidationError",
    "build_gamma_set",
    "clifford_residual",
    "dirac_weyl_transform",
    "energy_branches",
    "energy_squared",
    "group_velocity",
    "kron",
    "pauli",
    "positive_energy_solution",
    "residual",
    "snyder_energy",
]
