"""Spectral evolution of 1D spinor wavepackets on a periodic box.

The equation is diagonal in momentum, so each Fourier mode carries its own
4x4 Hermitian Hamiltonian H(p_k) and is propagated exactly with its
eigendecomposition: no operator splitting, no stability bound on dt.
Motion is along x^1; amplitudes are stored in FFT order.

Sums over modes go through ``np.sum`` (pairwise summation, fixed order), so
results do not depend on how the per-mode work is scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Any, Mapping

import numpy as np

from .algebra import GammaSet
from .dispersion import ModelParams, energy_branches
from .errors import DomainError, UsageError, ValidationError
from ._linalg import eigh_pinned
from .plane_wave import SIGN_CONVENTIONS, hamiltonian_from_components, helicity_spinor, sigma2_sign, solve_phi

X_AXIS = np.array([1.0, 0.0, 0.0])
ALIASING_TOL = 1e-8
PROJECTIONS = ("positive", "none")


@dataclass(frozen=True)
class MomentumGrid1D:
    n_modes: int
    box_length: float

    def __post_init__(self):
        n = self.n_modes
        if not isinstance(n, (int, np.integer)) or n < 8 or n & (n - 1):
            raise ValidationError(f"n_modes must be a power of two >= 8, got {n!r}")
        if not (self.box_length > 0 and math.isfinite(self.box_length)):
            raise ValidationError(f"box_length must be positive, got {self.box_length!r}")

    @property
    def dp(self) -> float:
        return 2.0 * math.pi / self.box_length

    @property
    def mode_index(self) -> np.ndarray:
        """Integer k of each mode in FFT order (0, 1, ..., n/2-1, -n/2, ..., -1)."""
        return np.fft.fftfreq(self.n_modes, d=1.0 / self.n_modes).astype(int)

    @property
    def momenta(self) -> np.ndarray:
        return self.dp * self.mode_index

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.n_modes) * (self.box_length / self.n_modes)


@dataclass(frozen=True)
class SpinorField:
    amplitudes: np.ndarray  # (n_modes, 4), momentum representation
    grid: MomentumGrid1D
    t: float = 0.0


@dataclass(frozen=True)
class PropagatorCache:
    grid: MomentumGrid1D
    params: ModelParams
    convention: str
    hamiltonians: np.ndarray  # (n, 4, 4)
    energies: np.ndarray  # (n, 4) ordered (+E, +E, -E, -E)
    vectors: np.ndarray  # (n, 4, 4), columns are eigenvectors

    def reconstruction_error(self) -> np.ndarray:
        """Per-mode max |V diag(lambda) V^dagger - H|."""
        v = self.vectors
        rec = (v * self.energies[:, None, :]) @ np.conj(np.swapaxes(v, -1, -2))
        return np.max(np.abs(rec - self.hamiltonians), axis=(-1, -2))

    def unitarity_error(self) -> np.ndarray:
        v = self.vectors
        return np.max(np.abs(np.conj(np.swapaxes(v, -1, -2)) @ v - np.eye(4)), axis=(-1, -2))


def build_mode_hamiltonian(params: ModelParams, p: float, gammas: GammaSet | None = None,
                           convention: str = "paper") -> np.ndarray:
    """H(p) for signed momentum p along x^1.

    Dirac representation: p s1(x)s1 + m s3(x)s0 + sign beta p^2 s2(x)s0.
    """
    return hamiltonian_from_components(params, float(p) * X_AXIS, gammas, convention)


def _reference_basis(n: int, gammas: GammaSet | None) -> np.ndarray:
    # (1,0) or (0,1) tensor the s1 eigenvectors: the helicity basis along x^1.
    u_up = helicity_spinor(X_AXIS, 1).u
    u_dn = helicity_spinor(X_AXIS, -1).u
    top, bottom = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    refs = np.stack([np.kron(top, u_up), np.kron(top, u_dn), np.kron(bottom, u_up), np.kron(bottom, u_dn)], axis=-1)
    if gammas is not None and gammas.representation != "dirac":
        from .algebra import dirac_weyl_transform

        refs = dirac_weyl_transform() @ refs
    return np.broadcast_to(refs, (n, 4, 4))


def build_propagator_cache(params: ModelParams, grid: MomentumGrid1D, gammas: GammaSet | None = None,
                           convention: str = "paper") -> PropagatorCache:
    sigma2_sign(convention)
    p = grid.momenta
    pcomp = np.stack([p, np.zeros_like(p), np.zeros_like(p)], axis=-1)
    h = hamiltonian_from_components(params, pcomp, gammas, convention)
    energies, vectors = eigh_pinned(h, _reference_basis(grid.n_modes, gammas))
    for arr in (h, energies, vectors):
        arr.setflags(write=False)
    return PropagatorCache(grid, params, convention, h, energies, vectors)


def propagate(state: SpinorField, dt: float, cache: PropagatorCache) -> SpinorField:
    """psi_k <- V_k exp(-i lambda_k dt) V_k^dagger psi_k for every mode."""
    if state.grid != cache.grid:
        raise UsageError("state and propagator cache live on different grids")
    v = cache.vectors
    coeff = np.einsum("kba,kb->ka", v.conj(), state.amplitudes)
    coeff *= np.exp(-1j * cache.energies * dt)
    return SpinorField(np.einsum("kab,kb->ka", v, coeff), state.grid, state.t + dt)


def eigen_coefficients(state: SpinorField, cache: PropagatorCache) -> np.ndarray:
    """Components of each mode along (+E, +E, -E, -E) eigenvectors."""
    return np.einsum("kba,kb->ka", cache.vectors.conj(), state.amplitudes)


def mode_spinors(params: ModelParams, grid: MomentumGrid1D, spin: int, projection: str,
                 convention: str = "paper") -> np.ndarray:
    """Per-mode 4-spinor content of a packet, spin quantized along +x^1.

    ``positive``: the positive-energy closed form phi (x) u at each p_k, i.e.
    each mode lies in the +E eigenspace. ``none``: the rest spinor (1,0) (x) u
    at every mode, which mixes both branches once p_k != 0.
    """
    if projection not in PROJECTIONS:
        raise UsageError(f"projection must be one of {PROJECTIONS}, got {projection!r}")
    u = helicity_spinor(X_AXIS, spin).u
    p = grid.momenta
    out = np.empty((grid.n_modes, 4), dtype=complex)
    if projection == "none":
        out[:] = np.kron(np.array([1.0, 0.0]), u)
        return out
    for k, pk in enumerate(p):
        # s.n u = sign(p) spin u, so eps |p| = spin * p for signed p
        eps = spin if pk >= 0 else -spin
        out[k] = np.kron(solve_phi(params, abs(pk), eps, 1, convention), u)
    return out


def gaussian_tail_mass(grid: MomentumGrid1D, p0: float, width: float) -> float:
    """Probability of N(p0, width^2) outside the grid's momentum range."""
    p = grid.momenta
    lo = (p.min() - p0) / (width * math.sqrt(2.0))
    hi = (p.max() - p0) / (width * math.sqrt(2.0))
    return 0.5 * math.erfc(-lo) + 0.5 * math.erfc(hi)


def init_gaussian_packet(grid: MomentumGrid1D, params: ModelParams, p0: float, width: float, spin: int = 1,
                         projection: str = "positive", convention: str = "paper", x0: float = 0.0) -> SpinorField:
    """Gaussian momentum envelope (|a|^2 has std ``width``) times per-mode spinors, norm 1."""
    if not width > 0:
        raise ValidationError(f"width must be > 0, got {width!r}")
    tail = gaussian_tail_mass(grid, p0, width)
    if tail > ALIASING_TOL:
        raise ValidationError(f"envelope leaks {tail:.3g} of its mass beyond the grid (limit {ALIASING_TOL:g})")
    p = grid.momenta
    env = np.exp(-((p - p0) ** 2) / (4.0 * width ** 2)) * np.exp(-1j * p * x0)
    amps = env[:, None] * mode_spinors(params, grid, spin, projection, convention)
    amps /= math.sqrt(np.sum(np.abs(amps) ** 2))
    return SpinorField(amps, grid, 0.0)


@dataclass(frozen=True)
class Observables:
    norm: float
    x_centroid: float
    p_centroid: float
    energy: float


def position_density(state: SpinorField) -> np.ndarray:
    """|psi(x_j)|^2 summed over spinor components, on grid.positions."""
    psi_x = np.fft.ifft(state.amplitudes, axis=0) * math.sqrt(state.grid.n_modes)
    return np.sum(np.abs(psi_x) ** 2, axis=1)


def circular_centroid(density: np.ndarray, box_length: float, previous: float | None = None) -> float:
    """Circular mean of a periodic density, unwrapped to lie nearest ``previous``."""
    n = density.shape[0]
    z = np.sum(density * np.exp(2j * math.pi * np.arange(n) / n))
    if abs(z) == 0.0:
        raise DomainError("centroid undefined: density has no first circular moment")
    x = box_length * math.atan2(z.imag, z.real) / (2.0 * math.pi)
    if previous is not None:
        x += box_length * round((previous - x) / box_length)
    return x


def observables(state: SpinorField, cache: PropagatorCache, previous_x: float | None = None) -> Observables:
    """Norm, <x> (circular, approximate once the packet wraps), <p> and <H>."""
    if state.grid != cache.grid:
        raise UsageError("state and propagator cache live on different grids")
    weights = np.sum(np.abs(state.amplitudes) ** 2, axis=1)
    norm = float(np.sum(weights))
    if norm == 0.0:
        raise DomainError("zero-norm state has no observables")
    p_c = float(np.sum(state.grid.momenta * weights)) / norm
    coeff = eigen_coefficients(state, cache)
    energy = float(np.sum(cache.energies * np.abs(coeff) ** 2)) / norm
    x_c = circular_centroid(position_density(state), state.grid.box_length, previous_x)
    return Observables(norm, x_c, p_c, energy)


# ---------------------------------------------------------------------------
# Runs


@dataclass(frozen=True)
class EvolutionConfig:
    mass: float = 1.0
    alpha: float = 0.0
    ell: float = 1.0
    n_modes: int = 1024
    box_length: float = 400.0
    p0: float = 1.0
    width: float = 0.1
    spin: int = 1
    projection: str = "positive"
    dt: float | None = None
    n_steps: int = 1000
    sample_stride: int = 10
    sign_convention: str = "paper"
    snapshot_stride: int = 0

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "EvolutionConfig":
        """Strict parsing: every unknown or ill-typed key is reported at once."""
        known = {f.name: f for f in fields(cls)}
        problems = [f"unknown key {k!r}" for k in data if k not in known]
        kwargs = {}
        for name, value in data.items():
            if name not in known:
                continue
            if name in ("n_modes", "n_steps", "sample_stride", "snapshot_stride", "spin"):
                ok = isinstance(value, int) and not isinstance(value, bool)
            elif name in ("projection", "sign_convention"):
                ok = isinstance(value, str)
            else:
                ok = isinstance(value, (int, float)) and not isinstance(value, bool)
            if not ok:
                problems.append(f"{name!r} has wrong type {type(value).__name__}")
            else:
                kwargs[name] = float(value) if name in ("mass", "alpha", "ell", "box_length", "p0", "width", "dt") else value
        if problems:
            raise ValidationError("; ".join(problems))
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        problems = []
        try:
            self.params
        except ValidationError as exc:
            problems.append(str(exc))
        try:
            self.grid
        except ValidationError as exc:
            problems.append(str(exc))
        if self.spin not in (1, -1):
            problems.append(f"'spin' must be +1 or -1, got {self.spin!r}")
        if self.projection not in PROJECTIONS:
            problems.append(f"'projection' must be one of {PROJECTIONS}, got {self.projection!r}")
        if self.sign_convention not in SIGN_CONVENTIONS:
            problems.append(f"'sign_convention' must be one of {SIGN_CONVENTIONS}, got {self.sign_convention!r}")
        if not self.width > 0:
            problems.append(f"'width' must be > 0, got {self.width!r}")
        if self.dt is not None and not (self.dt > 0 and math.isfinite(self.dt)):
            problems.append(f"'dt' must be > 0, got {self.dt!r}")
        if self.n_steps < 0:
            problems.append(f"'n_steps' must be >= 0, got {self.n_steps!r}")
        if self.sample_stride < 1:
            problems.append(f"'sample_stride' must be >= 1, got {self.sample_stride!r}")
        if self.snapshot_stride < 0:
            problems.append(f"'snapshot_stride' must be >= 0, got {self.snapshot_stride!r}")
        if problems:
            raise ValidationError("; ".join(problems))

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.mass, self.alpha, self.ell)

    @property
    def grid(self) -> MomentumGrid1D:
        return MomentumGrid1D(self.n_modes, self.box_length)


def default_dt(params: ModelParams, grid: MomentumGrid1D) -> float:
    """Step with max|E| dt <= pi/8, for sampling fidelity only."""
    e_max, _ = energy_branches(params, float(np.max(np.abs(grid.momenta))))
    return math.pi / (8.0 * e_max)


@dataclass
class ObservableSeries:
    times: np.ndarray
    norm: np.ndarray
    x_centroid: np.ndarray
    p_centroid: np.ndarray
    energy: np.ndarray


@dataclass
class RunResult:
    series: ObservableSeries
    snapshots: list[SpinorField] = field(default_factory=list)
    final: SpinorField | None = None
    cache: PropagatorCache | None = None


def run_evolution(config: EvolutionConfig) -> RunResult:
    """Propagate a Gaussian packet and sample observables every ``sample_stride`` steps.

    Samples are taken at step 0 and at every multiple of the stride; snapshots
    likewise at multiples of ``snapshot_stride`` when it is non-zero.
    """
    config.validate()
    params, grid = config.params, config.grid
    cache = build_propagator_cache(params, grid, convention=config.sign_convention)
    dt = config.dt if config.dt is not None else default_dt(params, grid)
    state = init_gaussian_packet(grid, params, config.p0, config.width, config.spin, config.projection,
                                 config.sign_convention)
    rows = []
    snaps = []
    prev_x = None
    for step in range(config.n_steps + 1):
        if step:
            state = propagate(state, dt, cache)
        # Avoid accumulating dt rounding into the recorded time.
        state = SpinorField(state.amplitudes, grid, step * dt)
        if step % config.sample_stride == 0:
            obs = observables(state, cache, prev_x)
            prev_x = obs.x_centroid
            rows.append((state.t, obs.norm, obs.x_centroid, obs.p_centroid, obs.energy))
        if config.snapshot_stride and step % config.snapshot_stride == 0:
            snaps.append(state)
    arr = np.array(rows, dtype=float).reshape(-1, 5)
    series = ObservableSeries(*(arr[:, i].copy() for i in range(5)))
    return RunResult(series, snaps, state, cache)


def envelope_group_velocity(state: SpinorField, params: ModelParams) -> float:
    """dE/dp averaged with the packet's momentum weights; p is signed, so is the result."""
    p = state.grid.momenta
    w = np.sum(np.abs(state.amplitudes) ** 2, axis=1)
    e, _ = energy_branches(params, np.abs(p))
    num = p + 2.0 * params.alpha * params.ell ** 2 * p ** 3
    v = np.divide(num, e, out=np.zeros_like(num), where=e > 0)
    return float(np.sum(w * v) / np.sum(w))


def dominant_frequency(times: np.ndarray, signal: np.ndarray, pad_factor: int = 16, detrend_order: int = 3) -> float:
    """Angular frequency of the largest spectral peak after removing a polynomial trend.

    Uses a Hann window, zero padding and parabolic interpolation of the peak.
    """
    times = np.asarray(times, dtype=float)
    signal = np.asarray(signal, dtype=float)
    if times.size < 8:
        raise ValidationError("need at least 8 samples for a frequency estimate")
    dt = times[1] - times[0]
    tc = (times - times.mean()) / np.ptp(times)
    trend = np.polyval(np.polyfit(tc, signal, detrend_order), tc)
    y = (signal - trend) * np.hanning(times.size)
    n = pad_factor * times.size
    spec = np.abs(np.fft.rfft(y, n=n))
    spec[0] = 0.0
    i = int(np.argmax(spec))
    shift = 0.0
    if 0 < i < spec.size - 1:
        a, b, c = spec[i - 1], spec[i], spec[i + 1]
        denom = a - 2 * b + c
        if denom != 0:
            shift = 0.5 * (a - c) / denom
    return 2.0 * math.pi * (i + shift) / (n * dt)
