"""Modified energy-momentum relation with a quartic length-scale term.

Natural units (hbar = c = 1) throughout::

    E^2 = p^2 + m^2 + alpha * ell^2 * p^4

Only ``beta = sqrt(alpha) * ell`` enters the equations of motion, but alpha and
ell are kept apart because the associated energy scale ``1/(sqrt(alpha) ell)``
needs both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants as sc

from .errors import DomainError, ValidationError


@dataclass(frozen=True)
class ModelParams:
    m: float = 1.0
    alpha: float = 0.0
    ell: float = 1.0

    def __post_init__(self):
        for name in ("m", "alpha", "ell"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValidationError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.m < 0:
            raise ValidationError(f"mass must be >= 0, got {self.m}")
        if self.alpha < 0:
            raise ValidationError(f"alpha must be >= 0, got {self.alpha}")
        if self.ell <= 0:
            raise ValidationError(f"ell must be > 0, got {self.ell}")

    @property
    def beta(self) -> float:
        """Coefficient sqrt(alpha) * ell of the p^2 correction in the Hamiltonian."""
        return math.sqrt(self.alpha) * self.ell


def snyder_energy(params: ModelParams) -> float:
    """Energy scale hbar c / (sqrt(alpha) ell) attached to the length ell."""
    if params.alpha == 0:
        raise DomainError("alpha = 0: no Snyder scale, the correction term vanishes")
    return 1.0 / params.beta


def energy_squared(params: ModelParams, p):
    """p^2 + m^2 + alpha ell^2 p^4. Accepts scalars or arrays."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise ValidationError("momentum magnitude must be >= 0")
    p2 = p * p
    out = p2 + params.m ** 2 + params.alpha * params.ell ** 2 * p2 * p2
    return float(out) if out.ndim == 0 else out


def energy_branches(params: ModelParams, p):
    """(E_plus, E_minus) with E_plus = +sqrt(E^2) and E_minus = -E_plus."""
    e = np.sqrt(energy_squared(params, p))
    if np.ndim(e) == 0:
        e = float(e)
    return e, -e


def group_velocity(params: ModelParams, p):
    """dE/dp = (p + 2 alpha ell^2 p^3) / E. Not clamped: it exceeds 1 at large p."""
    p_arr = np.asarray(p, dtype=float)
    e, _ = energy_branches(params, p_arr)
    if np.any(np.asarray(e) == 0):
        raise DomainError("group velocity undefined where E = 0 (m = 0, p = 0)")
    v = (p_arr + 2.0 * params.alpha * params.ell ** 2 * p_arr ** 3) / e
    return float(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class ScaleCatalog:
    """Reference length scales in cm. The Compton entry is an order of magnitude only."""

    ell_planck: float = 1.6e-33
    ell_lhc: float = 2e-18
    ell_compton: float = 1e-12
    ell_compton_approximate: bool = True
    # Recorded for provenance, not used in any computation.
    G: float = sc.G
    e: float = sc.e
    m_e: float = sc.m_e


def scale_hierarchy_holds(catalog: ScaleCatalog) -> bool:
    lengths = (catalog.ell_planck, catalog.ell_lhc, catalog.ell_compton)
    if any(not (x > 0) for x in lengths):
        raise ValidationError(f"all catalog lengths must be > 0, got {lengths}")
    return catalog.ell_planck < catalog.ell_lhc < catalog.ell_compton


# Unit presets for the CLI boundary. Internal unit of mass/energy/momentum is
# the electron mass (m_e, m_e c^2, m_e c) and of length the reduced Compton
# wavelength hbar/(m_e c), so "natural" and "electron" only differ in name.
UNIT_PRESETS = ("natural", "electron", "si")
REDUCED_COMPTON_M = sc.hbar / (sc.m_e * sc.c)


def to_natural(preset: str, *, m: float, ell: float, p=None):
    """Convert (mass, length, momentum) from a unit preset to hbar = c = m_e = 1.

    ``si`` expects kg, m and kg m/s. Returns ``(m, ell, p)``.
    """
    if preset in ("natural", "electron"):
        return m, ell, p
    if preset != "si":
        raise ValidationError(f"unknown unit preset {preset!r}; expected one of {UNIT_PRESETS}")
    p_nat = None if p is None else np.asarray(p, dtype=float) / (sc.m_e * sc.c)
    return m / sc.m_e, ell / REDUCED_COMPTON_M, p_nat
