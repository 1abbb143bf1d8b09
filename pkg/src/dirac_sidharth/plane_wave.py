"""Momentum-space plane-wave solutions of the modified Dirac equation.

Plane waves ``U exp(i(p.x - E t))`` turn the equation into ``M(p, E) U = 0``
with ``M = E - H(p)`` and, in the Dirac representation,

    H(p) = p s1 (x) (s.n) + m s3 (x) s0 + sign * beta p^2 s2 (x) s0,

``beta = sqrt(alpha) ell``. Splitting ``U = phi (x) u`` with ``u`` a helicity
spinor reduces this to the 2x2 problem ``h phi = E phi`` with

    h = eps p s1 + sign * beta p^2 s2 + m s3,    h^2 = E^2.

``sign`` is the sigma2 sign convention: ``"paper"`` (sign = -1, the default)
or ``"derived"`` (sign = +1, what a direct substitution of the plane wave into
the covariant equation gives). Both share the same spectrum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import GammaSet, build_gamma_set, dirac_weyl_transform, kron, normalize_representation, pauli
from .dispersion import ModelParams, energy_branches, energy_squared
from .errors import DomainError, UsageError, ValidationError
from ._linalg import eigh_pinned

SIGN_CONVENTIONS = ("paper", "derived")
SINGULAR_THRESHOLD = 1e-8

S0, S1, S2, S3 = (pauli(k) for k in range(4))
_DIRAC = build_gamma_set("dirac")


def sigma2_sign(convention: str) -> int:
    if convention == "paper":
        return -1
    if convention == "derived":
        return 1
    raise UsageError(f"unknown sign convention {convention!r}; expected one of {SIGN_CONVENTIONS}")


def _sign(value: int, what: str = "sign") -> int:
    if value not in (1, -1):
        raise UsageError(f"{what} must be +1 or -1, got {value!r}")
    return int(value)


def fix_phase(v: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    """Rotate the global phase so the first non-vanishing component is real positive."""
    v = np.asarray(v, dtype=complex)
    for c in v:
        if abs(c) > tol:
            return v * (abs(c) / c)
    return v


def overlap(a: np.ndarray, b: np.ndarray) -> float:
    """|<a, b>| / (|a| |b|); equals 1 iff a and b agree up to a global phase."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    return float(abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))


@dataclass(frozen=True)
class MomentumVector:
    """Three-momentum with its direction; ``axis`` is the direction used when p = 0."""

    components: tuple[float, float, float]
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        axis = tuple(float(c) for c in self.axis)
        if len(comps) != 3 or len(axis) != 3:
            raise ValidationError("momentum and axis need three components")
        if abs(math.sqrt(sum(a * a for a in axis)) - 1.0) > 1e-10:
            raise ValidationError(f"quantization axis must be a unit vector, got {axis}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "axis", axis)

    @classmethod
    def along(cls, p: float, direction=(0.0, 0.0, 1.0)) -> "MomentumVector":
        """Momentum of signed size ``p`` along a unit ``direction``."""
        d = np.asarray(direction, dtype=float)
        return cls(tuple(p * d), axis=tuple(d))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.components)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.components))

    @property
    def direction(self) -> np.ndarray:
        p = self.magnitude
        if p == 0.0:
            return np.array(self.axis)
        return self.vector / p

    def reversed(self) -> "MomentumVector":
        return MomentumVector(tuple(-c for c in self.components), axis=tuple(-a for a in self.axis))


@dataclass(frozen=True)
class HelicitySpinor:
    u: np.ndarray
    epsilon_spin: int


@dataclass(frozen=True)
class TwoSpinorPair:
    """Left-handed ``chi`` and right-handed ``phi`` two-component spinors."""

    chi: np.ndarray
    phi: np.ndarray


@dataclass(frozen=True)
class PlaneWaveSolution:
    """Momentum-space spinor of ``U exp(i(p.x - E t))``.

    ``E`` is the signed energy, i.e. ``branch * E_plus``.
    """

    U: np.ndarray
    E: float
    branch: int
    spin: int
    momentum: MomentumVector
    representation: str = "dirac"
    convention: str = "paper"

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.U))


# ---------------------------------------------------------------------------
# Helicity spinors


def sigma_dot(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    return n[0] * S1 + n[1] * S2 + n[2] * S3


def paper_spin_formula(n, label: str) -> np.ndarray:
    """The closed forms printed with the positive-energy solution, unmodified.

    Note the labels: ``"up"`` is the -1 eigenvector of s.n and ``"down"`` the
    +1 eigenvector.
    """
    n1, n2, n3 = (float(x) for x in n)
    norm = math.sqrt(2.0 * (1.0 + n3))
    if label == "up":
        return np.array([-n1 + 1j * n2, 1.0 + n3]) / norm
    if label == "down":
        return np.array([1.0 + n3, n1 + 1j * n2]) / norm
    raise UsageError(f"label must be 'up' or 'down', got {label!r}")


def _antipodal_formula(n, spin: int) -> np.ndarray:
    # Same eigenvectors rescaled by a phase so they are regular at n3 = -1.
    n1, n2, n3 = (float(x) for x in n)
    norm = math.sqrt(2.0 * (1.0 - n3))
    if spin == 1:
        v = np.array([n1 - 1j * n2, 1.0 - n3]) / norm
    else:
        v = np.array([-(1.0 - n3), n1 + 1j * n2]) / norm
    return fix_phase(v)


def helicity_spinor(n, spin: int) -> HelicitySpinor:
    """Unit eigenvector of s.n with eigenvalue ``spin``.

    Away from n = -z this is the printed closed form (the ``"down"`` formula
    for +1 and ``"up"`` for -1); near n = -z the regular antipodal form is used.
    The stored ``epsilon_spin`` is the eigenvalue measured by applying s.n.
    """
    spin = _sign(spin, "spin")
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-10:
        raise ValidationError(f"n must be a unit 3-vector, got {n}")
    if 1.0 + n[2] > SINGULAR_THRESHOLD:
        u = paper_spin_formula(n, "down" if spin == 1 else "up")
    else:
        u = _antipodal_formula(n, spin)
    measured = np.vdot(u, sigma_dot(n) @ u).real
    return HelicitySpinor(u=u, epsilon_spin=int(round(measured)))


# ---------------------------------------------------------------------------
# The 2x2 problem


def effective_hamiltonian_h(params: ModelParams, p: float, epsilon_spin: int, convention: str = "paper") -> np.ndarray:
    """h = eps p s1 + sign beta p^2 s2 + m s3 (Hermitian, h^2 = E^2)."""
    if p < 0:
        raise ValidationError("momentum magnitude must be >= 0")
    eps = _sign(epsilon_spin, "epsilon_spin")
    s = sigma2_sign(convention)
    return eps * p * S1 + s * params.beta * p * p * S2 + params.m * S3


def solve_phi(params: ModelParams, p: float, epsilon_spin: int, branch: int, convention: str = "paper") -> np.ndarray:
    """Unit eigenvector of ``h`` with eigenvalue ``branch * E_plus``.

    The positive branch is the printed closed form
    ``sqrt((E+m)/2E) * (1, (eps p - i beta p^2)/(m+E))`` (paper convention).
    """
    eps = _sign(epsilon_spin, "epsilon_spin")
    branch = _sign(branch, "branch")
    e, _ = energy_branches(params, p)
    if e == 0.0:
        raise DomainError("E = 0 (m = 0, p = 0): eigenvector not unique")
    s = sigma2_sign(convention)
    lower = eps * p + 1j * s * params.beta * p * p  # h[1, 0]
    norm = math.sqrt((e + params.m) / (2.0 * e))
    if branch == 1:
        return norm * np.array([1.0, lower / (params.m + e)])
    return fix_phase(norm * np.array([-np.conj(lower) / (params.m + e), 1.0]))


def plane_wave_solution(params: ModelParams, pvec: MomentumVector, spin: int, branch: int = 1,
                        convention: str = "paper") -> PlaneWaveSolution:
    """U = phi (x) u in the Dirac representation for either energy branch."""
    hel = helicity_spinor(pvec.direction, spin)
    phi = solve_phi(params, pvec.magnitude, hel.epsilon_spin, branch, convention)
    e, _ = energy_branches(params, pvec.magnitude)
    return PlaneWaveSolution(
        U=kron(phi, hel.u).reshape(4),
        E=branch * e,
        branch=branch,
        spin=hel.epsilon_spin,
        momentum=pvec,
        representation="dirac",
        convention=convention,
    )


def positive_energy_solution(params: ModelParams, pvec: MomentumVector, spin: int,
                             convention: str = "paper") -> PlaneWaveSolution:
    return plane_wave_solution(params, pvec, spin, 1, convention)


def to_representation(sol: PlaneWaveSolution, representation: str) -> PlaneWaveSolution:
    rep = normalize_representation(representation)
    if rep == sol.representation:
        return sol
    # T is an involution, so the same matrix maps either way.
    t = dirac_weyl_transform()
    return PlaneWaveSolution(t @ sol.U, sol.E, sol.branch, sol.spin, sol.momentum, rep, sol.convention)


# ---------------------------------------------------------------------------
# 4x4 operators


def hamiltonian_from_components(params: ModelParams, pcomp, gammas: GammaSet | None = None,
                                convention: str = "paper") -> np.ndarray:
    """H for momenta of shape (..., 3); returns shape (..., 4, 4).

    H = g0 g^j p_j + m g0 + sign beta p^2 (-i g0 g5), which in the Dirac
    representation is the block form in the module docstring and transforms
    covariantly under any similarity.
    """
    g = _DIRAC if gammas is None else gammas
    s = sigma2_sign(convention)
    pcomp = np.asarray(pcomp, dtype=float)
    p2 = np.sum(pcomp * pcomp, axis=-1)
    g0 = g.gamma0
    alphas = [g0 @ gj for gj in (g.gamma1, g.gamma2, g.gamma3)]
    corr = -1j * (g0 @ g.gamma5)
    h = (pcomp[..., 0, None, None] * alphas[0]
         + pcomp[..., 1, None, None] * alphas[1]
         + pcomp[..., 2, None, None] * alphas[2])
    h = h + params.m * g0 + (s * params.beta * p2)[..., None, None] * corr
    return h


def hamiltonian(params: ModelParams, pvec: MomentumVector, gammas: GammaSet | None = None,
                convention: str = "paper") -> np.ndarray:
    return hamiltonian_from_components(params, pvec.vector, gammas, convention)


def momentum_space_operator(params: ModelParams, pvec: MomentumVector, E: float, gammas: GammaSet | None = None,
                            convention: str = "paper") -> np.ndarray:
    """M(p, E) = E I - H(p); plane-wave solutions satisfy M U = 0.

    In the Dirac representation with the paper convention this is
    ``E - p s1(x)(s.n) - m s3(x)s0 + beta p^2 s2(x)s0``.
    """
    return E * np.eye(4, dtype=complex) - hamiltonian(params, pvec, gammas, convention)


def residual(sol: PlaneWaveSolution, params: ModelParams, gammas: GammaSet | None = None) -> float:
    """||M(p, E) U|| with E the solution's signed energy."""
    g = _DIRAC if gammas is None else gammas
    if g.representation != sol.representation:
        raise UsageError(f"solution is in {sol.representation!r} but gammas are {g.representation!r}")
    m = momentum_space_operator(params, sol.momentum, sol.E, g, sol.convention)
    return float(np.linalg.norm(m @ sol.U))


def parity_transform(sol: PlaneWaveSolution, gammas: GammaSet | None = None) -> PlaneWaveSolution:
    """U -> g0 U, p -> -p (the spatial reflection acting on a plane wave)."""
    g = _DIRAC if gammas is None else gammas
    if g.representation != sol.representation:
        raise UsageError(f"solution is in {sol.representation!r} but gammas are {g.representation!r}")
    return PlaneWaveSolution(g.gamma0 @ sol.U, sol.E, sol.branch, sol.spin, sol.momentum.reversed(),
                             sol.representation, sol.convention)


def parity_residual(sol: PlaneWaveSolution, params: ModelParams, gammas: GammaSet | None = None) -> tuple[float, float]:
    """Residual of the reflected plane wave and the lower bound 2 beta p^2 ||U||.

    The reflected wave fails the equation only through the p^2 term, which is
    even in p while the reflection flips the sign of g0 g5 relative to it.
    """
    reflected = parity_transform(sol, gammas)
    bound = 2.0 * params.beta * sol.momentum.magnitude ** 2 * sol.norm
    return residual(reflected, params, gammas), bound


def all_solutions(params: ModelParams, pvec: MomentumVector, gammas: GammaSet | None = None,
                  convention: str = "paper") -> list[PlaneWaveSolution]:
    """Orthonormal eigenbasis of H(p): two +E_plus solutions, then two -E_plus.

    Within each degenerate pair the basis is pinned to helicity +1, -1.
    """
    g = _DIRAC if gammas is None else gammas
    e, _ = energy_branches(params, pvec.magnitude)
    if e == 0.0:
        raise DomainError("E = 0 (m = 0, p = 0): branches are degenerate")
    n = pvec.direction
    u_up, u_dn = helicity_spinor(n, 1).u, helicity_spinor(n, -1).u
    top, bottom = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    refs = np.stack([np.kron(top, u_up), np.kron(top, u_dn), np.kron(bottom, u_up), np.kron(bottom, u_dn)], axis=-1)
    if g.representation != "dirac":
        refs = dirac_weyl_transform() @ refs
    h = hamiltonian(params, pvec, g, convention)
    energies, vectors = eigh_pinned(h[None], refs[None])
    out = []
    for b, (branch, spin) in enumerate([(1, 1), (1, -1), (-1, 1), (-1, -1)]):
        out.append(PlaneWaveSolution(vectors[0, :, b], float(energies[0, b]), branch, spin, pvec,
                                     g.representation, convention))
    return out


# ---------------------------------------------------------------------------
# chi-phi system


def _sigma_p(pvec: MomentumVector) -> np.ndarray:
    return sigma_dot(pvec.vector)


def chi_from_phi(params: ModelParams, pvec: MomentumVector, E: float, phi) -> np.ndarray:
    """Resummed series operator on a plane wave.

    chi = (E + s.p) phi / (m (1 + i beta p^2 / m)); the geometric series in
    ``i beta p^2 / m`` converges to this whenever that ratio is below one.
    """
    if params.m <= 0:
        raise DomainError("m = 0: the 1/m prefactor of the series operator is undefined")
    phi = np.asarray(phi, dtype=complex)
    p2 = pvec.magnitude ** 2
    return (E * phi + _sigma_p(pvec) @ phi) / (params.m + 1j * params.beta * p2)


def chi_series_partial_sums(params: ModelParams, pvec: MomentumVector, E: float, phi, max_terms: int = 64,
                            tol: float = 1e-14) -> list[np.ndarray]:
    """Partial sums k = 0..K of the literal series, one array per K.

    Each term is built with the matrix (s.p)^2, not the scalar p^2. Stops
    early once a term's norm drops below ``tol``.
    """
    if params.m <= 0:
        raise DomainError("m = 0: the 1/m prefactor of the series operator is undefined")
    phi = np.asarray(phi, dtype=complex)
    sp = _sigma_p(pvec)
    step = -(1j * params.beta / params.m) * (sp @ sp)
    term = (E * phi + sp @ phi) / params.m
    total = np.zeros(2, dtype=complex)
    sums = []
    for _ in range(max_terms + 1):
        total = total + term
        sums.append(total.copy())
        if np.linalg.norm(term) < tol:
            break
        term = step @ term
    return sums


def chi_series(params: ModelParams, pvec: MomentumVector, E: float, phi, max_terms: int = 64,
               tol: float = 1e-14) -> np.ndarray:
    return chi_series_partial_sums(params, pvec, E, phi, max_terms, tol)[-1]


def system_residual(pair: TwoSpinorPair, params: ModelParams, pvec: MomentumVector, E: float) -> tuple[float, float]:
    """Residual norms of the two coupled first-order equations for (chi, phi).

    With the plane-wave substitution the pair reads
    ``(E - s.p) chi = (m - i beta p^2) phi`` and
    ``(E + s.p) phi = (m + i beta p^2) chi``.
    """
    chi = np.asarray(pair.chi, dtype=complex)
    phi = np.asarray(pair.phi, dtype=complex)
    sp = _sigma_p(pvec)
    q = params.beta * pvec.magnitude ** 2
    r1 = E * chi - sp @ chi - (params.m - 1j * q) * phi
    r2 = E * phi + sp @ phi - (params.m + 1j * q) * chi
    return float(np.linalg.norm(r1)), float(np.linalg.norm(r2))


def assemble_spinor(pair: TwoSpinorPair, representation: str) -> np.ndarray:
    """Weyl: (chi, phi). Dirac: (chi + phi, chi - phi) / sqrt(2)."""
    rep = normalize_representation(representation)
    chi = np.asarray(pair.chi, dtype=complex)
    phi = np.asarray(pair.phi, dtype=complex)
    if rep == "weyl":
        return np.concatenate([chi, phi])
    return np.concatenate([chi + phi, chi - phi]) / math.sqrt(2.0)


def kg_sidharth_symbol(params: ModelParams, p: float, E: float) -> float:
    """E^2 - p^2 - m^2 - alpha ell^2 p^4; vanishes exactly on the mass shell."""
    return E * E - energy_squared(params, p)
