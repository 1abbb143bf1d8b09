"""Pauli matrices, Kronecker products and 4x4 gamma-matrix sets.

The Dirac set is built from tensor products of Pauli matrices::

    gamma0 = s3 (x) s0,   gamma_j = i s2 (x) s_j,   gamma5 = s1 (x) s0

The Weyl (chiral) set is never hard-coded; it is the image of the Dirac set
under ``T = (s3 + s1) (x) s0 / sqrt(2)``, which maps ``(chi, phi)`` to
``(chi + phi, chi - phi) / sqrt(2)``.

Metric signature is (+, -, -, -). All comparisons use an absolute tolerance
of 1e-12, every entry involved being O(1).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .errors import UsageError, ValidationError

Representation = Literal["dirac", "weyl"]
REPRESENTATIONS = ("dirac", "weyl")

ATOL = 1e-12
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_PAULI = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _s in _PAULI:
    _s.setflags(write=False)

I4 = np.eye(4, dtype=complex)
I4.setflags(write=False)


def pauli(k: int) -> np.ndarray:
    """Return sigma^k; ``k = 0`` is the 2x2 identity."""
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or not 0 <= k <= 3:
        raise UsageError(f"Pauli index must be 0, 1, 2 or 3, got {k!r}")
    return _PAULI[k].copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``[[a11*b, a12*b], [a21*b, a22*b]]``."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def normalize_representation(tag: str) -> Representation:
    key = str(tag).strip().lower()
    if key not in REPRESENTATIONS:
        raise UsageError(f"unknown representation {tag!r}; expected one of {REPRESENTATIONS}")
    return key  # type: ignore[return-value]


@dataclass(frozen=True)
class GammaSet:
    """gamma^0..gamma^3 plus gamma^5 in one representation."""

    gamma0: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray
    gamma5: np.ndarray
    representation: str

    def __post_init__(self):
        for name in ("gamma0", "gamma1", "gamma2", "gamma3", "gamma5"):
            m = np.array(getattr(self, name), dtype=complex)
            if m.shape != (4, 4):
                raise ValidationError(f"{name} must be 4x4, got shape {m.shape}")
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @property
    def mu(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """The four Lorentz-index matrices (gamma^0, ..., gamma^3)."""
        return (self.gamma0, self.gamma1, self.gamma2, self.gamma3)

    def gamma5_from_product(self) -> np.ndarray:
        g0, g1, g2, g3 = self.mu
        return 1j * g0 @ g1 @ g2 @ g3

    def with_matrix(self, name: str, value: np.ndarray) -> "GammaSet":
        """Copy with one matrix swapped out; used for fault injection."""
        if name not in ("gamma0", "gamma1", "gamma2", "gamma3", "gamma5"):
            raise UsageError(f"no gamma matrix named {name!r}")
        return replace(self, **{name: value})


def dirac_weyl_transform() -> np.ndarray:
    """Unitary involution T with T (chi, phi) = (chi + phi, chi - phi)/sqrt(2)."""
    return kron((_PAULI[3] + _PAULI[1]) / np.sqrt(2.0), _PAULI[0])


def _dirac_set() -> GammaSet:
    s0, s1, s2, s3 = _PAULI
    return GammaSet(
        gamma0=kron(s3, s0),
        gamma1=kron(1j * s2, s1),
        gamma2=kron(1j * s2, s2),
        gamma3=kron(1j * s2, s3),
        gamma5=kron(s1, s0),
        representation="dirac",
    )


def is_unitary(t: np.ndarray, atol: float = ATOL) -> bool:
    t = np.asarray(t, dtype=complex)
    return t.shape[0] == t.shape[1] and np.allclose(t @ t.conj().T, np.eye(t.shape[0]), rtol=0, atol=atol)


def apply_similarity(gammas: GammaSet, t: np.ndarray, representation: str | None = None) -> GammaSet:
    """Replace every gamma by ``t @ gamma @ t^dagger``.

    The representation tag is kept unless the caller passes a new one.
    """
    t = np.asarray(t, dtype=complex)
    if t.shape != (4, 4) or not is_unitary(t):
        raise ValidationError("similarity transform must be a 4x4 unitary matrix (tolerance 1e-12)")
    td = t.conj().T
    return GammaSet(
        gamma0=t @ gammas.gamma0 @ td,
        gamma1=t @ gammas.gamma1 @ td,
        gamma2=t @ gammas.gamma2 @ td,
        gamma3=t @ gammas.gamma3 @ td,
        gamma5=t @ gammas.gamma5 @ td,
        representation=gammas.representation if representation is None else representation,
    )


def build_gamma_set(representation: str = "dirac") -> GammaSet:
    rep = normalize_representation(representation)
    dirac = _dirac_set()
    if rep == "dirac":
        return dirac
    return apply_similarity(dirac, dirac_weyl_transform(), representation="weyl")


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def clifford_residual(gammas: GammaSet) -> float:
    """max over mu, nu of max |{g^mu, g^nu} - 2 eta^{mu nu} I|."""
    worst = 0.0
    g = gammas.mu
    for m in range(4):
        for n in range(4):
            r = anticommutator(g[m], g[n]) - 2.0 * METRIC[m, n] * I4
            worst = max(worst, float(np.max(np.abs(r))))
    return worst


def parity_gamma5_residual(gammas: GammaSet) -> float:
    """max |gamma0 gamma5 + gamma5 gamma0|; gamma0 is the matrix part of parity."""
    return float(np.max(np.abs(anticommutator(gammas.gamma0, gammas.gamma5))))


def gamma5_product_residual(gammas: GammaSet) -> float:
    return float(np.max(np.abs(gammas.gamma5_from_product() - gammas.gamma5)))


def gamma5_square_residual(gammas: GammaSet) -> float:
    return float(np.max(np.abs(gammas.gamma5 @ gammas.gamma5 - I4)))


def gamma5_anticommutation_residual(gammas: GammaSet) -> float:
    return max(float(np.max(np.abs(anticommutator(gammas.gamma5, g)))) for g in gammas.mu)


def hermiticity_residual(gammas: GammaSet) -> float:
    """Deviation from gamma0, gamma5 Hermitian and gamma_j anti-Hermitian."""
    checks = [
        gammas.gamma0.conj().T - gammas.gamma0,
        gammas.gamma5.conj().T - gammas.gamma5,
    ]
    checks += [g.conj().T + g for g in (gammas.gamma1, gammas.gamma2, gammas.gamma3)]
    return max(float(np.max(np.abs(c))) for c in checks)


def invariant_residuals(gammas: GammaSet) -> dict[str, float]:
    """Every algebraic invariant of a gamma set, as name -> residual."""
    return {
        "clifford": clifford_residual(gammas),
        "gamma5_product": gamma5_product_residual(gammas),
        "gamma5_square": gamma5_square_residual(gammas),
        "gamma5_anticommutation": gamma5_anticommutation_residual(gammas),
        "hermiticity": hermiticity_residual(gammas),
        "parity_gamma5": parity_gamma5_residual(gammas),
    }
